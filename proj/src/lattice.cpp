#include "ecdenom/lattice.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdlib>
#include <exception>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <string>
#include <thread>

#include "ecdenom/errors.hpp"

namespace ecd {

std::int64_t max_norm(const NVec& n) {
  std::int64_t m = 0;
  for (std::int64_t v : n) m = std::max(m, v < 0 ? -v : v);
  return m;
}

MWBasis make_basis(CurveModel curve, std::vector<Point> generators, TorsionGroup torsion) {
  for (std::size_t i = 0; i < generators.size(); ++i) {
    const Point& g = generators[i];
    if (g.is_infinity()) throw TorsionGenerator("generator " + std::to_string(i) + " is O");
    if (!on_curve(curve, g)) {
      throw GeneratorNotOnCurve("generator " + std::to_string(i) + " " + g.to_string() +
                                " is not on the curve");
    }
    if (unsigned k = order_up_to_12(curve, g); k != 0) {
      throw TorsionGenerator("generator " + std::to_string(i) + " has finite order " +
                             std::to_string(k));
    }
  }
  if (torsion.points.empty()) torsion = trivial_torsion();
  return MWBasis{std::move(curve), std::move(generators), std::move(torsion)};
}

Point combination(const MWBasis& basis, const NVec& n, std::size_t torsion_index) {
  Point acc = basis.torsion.points.at(torsion_index);
  for (std::size_t i = 0; i < n.size() && i < basis.generators.size(); ++i) {
    if (n[i] == 0) continue;
    Point term = scalar_mul_trusted(basis.curve, Integer(static_cast<long>(n[i])),
                                    basis.generators[i]);
    acc = add_trusted(basis.curve, acc, term);
  }
  return acc;
}

// ---------------------------------------------------------------------------

RayWalker::RayWalker(const CurveModel& curve, Point step)
    : curve_(&curve), step_(std::move(step)) {}

const Point& RayWalker::next() {
  current_ = add_trusted(*curve_, current_, step_);
  ++k_;
  return current_;
}

std::vector<std::pair<std::int64_t, Point>> ray_walk(const MWBasis& basis, const NVec& direction,
                                                     std::size_t max_steps) {
  if (max_norm(direction) == 0) throw PreconditionViolation("ray_walk: zero direction");
  if (direction.size() != basis.rank()) {
    throw PreconditionViolation("ray_walk: direction length differs from rank");
  }
  RayWalker walker(basis.curve, combination(basis, direction, 0));
  std::vector<std::pair<std::int64_t, Point>> out;
  out.reserve(max_steps);
  for (std::size_t i = 0; i < max_steps; ++i) {
    const Point& p = walker.next();
    out.emplace_back(walker.k(), p);
  }
  return out;
}

std::vector<Integer> denominator_sequence(const CurveModel& curve, const Point& p,
                                          std::size_t count) {
  RayWalker walker(curve, p);
  std::vector<Integer> zs;
  zs.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const Point& q = walker.next();
    if (q.is_infinity()) {
      throw TorsionGenerator("point has finite order " + std::to_string(walker.k()));
    }
    zs.push_back(denom_form(curve, q).z);
  }
  return zs;
}

// ---------------------------------------------------------------------------

namespace {

double log_z_of(const Integer& z) { return z == 1 ? 0.0 : log_abs(z); }

bool first_nonzero_positive(const NVec& v) {
  for (std::int64_t x : v) {
    if (x != 0) return x > 0;
  }
  return false;
}

std::int64_t content(const NVec& v) {
  std::int64_t g = 0;
  for (std::int64_t x : v) g = std::gcd(g, x);
  return g;
}

/// Primitive vectors of max-norm s whose first nonzero entry is positive,
/// in lexicographic order.
std::vector<NVec> primitive_positive_directions(std::size_t rank, std::int64_t s) {
  std::vector<NVec> out;
  NVec v(rank, -s);
  for (;;) {
    if (max_norm(v) == s && first_nonzero_positive(v) && content(v) == 1) out.push_back(v);
    std::size_t i = rank;
    while (i > 0) {
      --i;
      if (v[i] < s) {
        ++v[i];
        break;
      }
      v[i] = -s;
      if (i == 0) return out;
    }
    if (rank == 0) return out;
  }
}

NVec scaled(const NVec& d, std::int64_t k) {
  NVec out(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) out[i] = d[i] * k;
  return out;
}

struct Ray {
  NVec direction;
  std::int64_t norm = 0;
  std::unique_ptr<RayWalker> walker;  // created on the ray's first shell
};

/// m . P_i for 0 <= m <= current shell, one addition per generator per shell.
class MultipleTable {
 public:
  explicit MultipleTable(const MWBasis& basis) : basis_(&basis), table_(basis.rank()) {
    for (auto& column : table_) column.emplace_back();
  }

  void extend() {
    for (std::size_t i = 0; i < table_.size(); ++i) {
      table_[i].push_back(add_trusted(basis_->curve, table_[i].back(), basis_->generators[i]));
    }
  }

  Point combination(const NVec& d) const {
    Point acc;
    for (std::size_t i = 0; i < d.size(); ++i) {
      if (d[i] == 0) continue;
      const Point& m = table_[i].at(static_cast<std::size_t>(d[i] < 0 ? -d[i] : d[i]));
      acc = add_trusted(basis_->curve, acc, d[i] < 0 ? negate_trusted(basis_->curve, m) : m);
    }
    return acc;
  }

 private:
  const MWBasis* basis_;
  std::vector<std::vector<Point>> table_;
};

struct ShellOutput {
  std::vector<EnumRecord> records;
  std::optional<double> c_hat;
};

void merge_c_hat(std::optional<double>& into, std::optional<double> v) {
  if (v && (!into || *v < *into)) into = v;
}

/// Advances one ray onto the current shell and evaluates all torsion
/// translates of the new point together with their mirrors.
ShellOutput advance_ray(const MWBasis& basis, const MultipleTable& multiples,
                        const std::vector<std::size_t>& neg, Ray& ray, const Integer& max_z,
                        const Integer& max_z_squared) {
  if (!ray.walker) {
    ray.walker = std::make_unique<RayWalker>(basis.curve, multiples.combination(ray.direction));
  }
  ShellOutput out;
  const Point& base = ray.walker->next();
  const std::int64_t k = ray.walker->k();
  NVec nvec = scaled(ray.direction, k);
  NVec mirror = scaled(nvec, -1);
  const double norm = static_cast<double>(ray.norm * k);
  for (std::size_t i = 0; i < basis.torsion.points.size(); ++i) {
    Point p = add_trusted(basis.curve, base, basis.torsion.points[i]);
    // den(x) = z^2: compare against Z^2 before paying for the square root.
    const Integer& xden = p.x().get_den();
    if (xden > max_z_squared) {
      if (i == 0) merge_c_hat(out.c_hat, 0.5 * log_abs(xden) / (norm * norm));
      continue;
    }
    DenomTriple t = denom_form(basis.curve, p);
    double lz = log_z_of(t.z);
    if (i == 0 && t.z > 1) merge_c_hat(out.c_hat, lz / (norm * norm));
    if (t.z > max_z) continue;
    DenomTriple tm = denom_form(basis.curve, negate_trusted(basis.curve, p));
    out.records.push_back(EnumRecord{nvec, i, std::move(t), lz});
    out.records.push_back(EnumRecord{mirror, neg[i], std::move(tm), lz});
  }
  return out;
}

bool record_less(const EnumRecord& a, const EnumRecord& b) {
  if (a.nvec != b.nvec) return a.nvec < b.nvec;
  return a.torsion_index < b.torsion_index;
}

}  // namespace

Enumeration enumerate_up_to(const MWBasis& basis, const Integer& max_z,
                            const EnumerationOptions& options) {
  const std::size_t rank = basis.rank();
  if (rank == 0 && basis.torsion.order() <= 1) throw EmptyBasis();
  const std::vector<std::size_t> neg = basis.torsion.negation_table(basis.curve);
  unsigned threads = options.threads == 0 ? std::max(1u, std::thread::hardware_concurrency())
                                          : options.threads;

  Enumeration result;
  // Shell 0: the torsion points themselves.
  for (std::size_t i = 1; i < basis.torsion.points.size(); ++i) {
    DenomTriple t = denom_form(basis.curve, basis.torsion.points[i]);
    if (t.z > max_z) continue;
    double lz = log_z_of(t.z);
    result.records.push_back(EnumRecord{NVec(rank, 0), i, std::move(t), lz});
  }
  result.shells_visited = 1;
  if (rank == 0) return result;

  const Integer max_z_squared = max_z * max_z;
  MultipleTable multiples(basis);
  std::map<NVec, Ray> rays;
  std::size_t empty_run = 0;
  for (std::size_t s = 1; s <= options.max_shells; ++s) {
    const auto shell = static_cast<std::int64_t>(s);
    multiples.extend();
    for (NVec& d : primitive_positive_directions(rank, shell)) {
      Ray ray{d, shell, nullptr};
      rays.emplace(std::move(d), std::move(ray));
    }
    std::vector<Ray*> tasks;
    for (auto& [dir, ray] : rays) {
      if (shell % ray.norm == 0) tasks.push_back(&ray);
    }

    std::vector<ShellOutput> outputs(tasks.size());
    if (threads <= 1 || tasks.size() <= 1) {
      for (std::size_t t = 0; t < tasks.size(); ++t) {
        outputs[t] = advance_ray(basis, multiples, neg, *tasks[t], max_z, max_z_squared);
      }
    } else {
      std::atomic<std::size_t> next{0};
      std::exception_ptr failure;
      std::mutex failure_mutex;
      {
        std::vector<std::jthread> workers;
        unsigned n = std::min<unsigned>(threads, static_cast<unsigned>(tasks.size()));
        for (unsigned w = 0; w < n; ++w) {
          workers.emplace_back([&] {
            for (std::size_t t = next++; t < tasks.size(); t = next++) {
              try {
                outputs[t] = advance_ray(basis, multiples, neg, *tasks[t], max_z, max_z_squared);
              } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
              }
            }
          });
        }
      }
      if (failure) std::rethrow_exception(failure);
    }

    std::vector<EnumRecord> shell_records;
    for (ShellOutput& o : outputs) {
      merge_c_hat(result.c_hat, o.c_hat);
      std::move(o.records.begin(), o.records.end(), std::back_inserter(shell_records));
    }
    std::sort(shell_records.begin(), shell_records.end(), record_less);
    result.shells_visited = s + 1;
    result.stopping_shell = s;
    if (shell_records.empty()) {
      ++empty_run;
    } else {
      empty_run = 0;
      std::move(shell_records.begin(), shell_records.end(), std::back_inserter(result.records));
    }
    if (empty_run > options.extra_shells) break;
  }
  return result;
}

// ---------------------------------------------------------------------------

GrowthFit fit_growth(const MWBasis& basis, std::size_t generator_index, std::int64_t n_min,
                     std::int64_t n_max) {
  if (generator_index >= basis.rank()) {
    throw PreconditionViolation("fit_growth: generator index " + std::to_string(generator_index) +
                                " out of range");
  }
  if (n_min < 2 || n_max < n_min) throw PreconditionViolation("fit_growth: need 2 <= nmin <= nmax");

  const Point& q = basis.generators[generator_index];
  GrowthFit fit;
  fit.n_min = n_min;
  fit.n_max = n_max;
  double num = 0.0;
  double den = 0.0;
  RayWalker walker(basis.curve, q);
  while (walker.k() < n_max) {
    const Point& p = walker.next();
    if (walker.k() < n_min) continue;
    Integer z = denom_form(basis.curve, p).z;
    if (z == 1) continue;
    double n2 = static_cast<double>(walker.k()) * static_cast<double>(walker.k());
    double lz = log_abs(z);
    double ratio = lz / n2;
    if (fit.samples == 0) {
      fit.c_hat = fit.C_hat = ratio;
    } else {
      fit.c_hat = std::min(fit.c_hat, ratio);
      fit.C_hat = std::max(fit.C_hat, ratio);
    }
    num += n2 * lz;
    den += n2 * n2;
    ++fit.samples;
  }
  if (fit.samples < 3) {
    throw InsufficientData("fit_growth: only " + std::to_string(fit.samples) +
                           " non-integral multiples in range");
  }
  fit.slope = num / den;
  // Rounding can push a weighted mean of equal ratios just outside [min, max].
  fit.slope = std::clamp(fit.slope, fit.c_hat, fit.C_hat);
  return fit;
}

unsigned threads_from_env(unsigned fallback) {
  const char* raw = std::getenv("EC_DENOM_THREADS");
  if (raw == nullptr || *raw == '\0') return fallback;
  std::string_view text(raw);
  unsigned value = 0;
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size() || value == 0) {
    throw InputError("EC_DENOM_THREADS must be a positive integer, got '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace ecd
