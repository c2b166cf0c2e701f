#pragma once

// Exact integer linear algebra mod n: Smith normal form over arbitrary
// precision integers, solvability and full parameterization of A*x = b (mod n).

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace closedchroma {

using BigInt = boost::multiprecision::cpp_int;

/// Thrown when a configured resource bound (vertex count, enumeration cap
/// used as a hard limit, ...) is exceeded.
struct resource_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Dense row-major matrix of arbitrary-precision integers.
class IntMatrix {
 public:
  IntMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  BigInt& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const BigInt& at(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  bool operator==(const IntMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }

  IntMatrix operator*(const IntMatrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("matrix product: dimension mismatch");
    IntMatrix out(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const BigInt& a = at(i, k);
        if (a == 0) continue;
        for (std::size_t j = 0; j < o.cols_; ++j) out.at(i, j) += a * o.at(k, j);
      }
    return out;
  }

  /// Exact determinant (Bareiss fraction-free elimination).
  BigInt determinant() const {
    if (rows_ != cols_) throw std::invalid_argument("determinant: not square");
    if (rows_ == 0) return 1;
    IntMatrix a = *this;
    BigInt prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < rows_; ++k) {
      if (a.at(k, k) == 0) {
        std::size_t p = k + 1;
        while (p < rows_ && a.at(p, k) == 0) ++p;
        if (p == rows_) return 0;
        for (std::size_t j = 0; j < cols_; ++j) std::swap(a.at(k, j), a.at(p, j));
        sign = -sign;
      }
      for (std::size_t i = k + 1; i < rows_; ++i)
        for (std::size_t j = k + 1; j < cols_; ++j)
          a.at(i, j) = (a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j)) / prev;
      prev = a.at(k, k);
    }
    return sign > 0 ? a.at(rows_ - 1, rows_ - 1) : -a.at(rows_ - 1, rows_ - 1);
  }

 private:
  std::size_t rows_, cols_;
  std::vector<BigInt> data_;
};

/// U * M * V = S with U, V unimodular and S diagonal with the divisibility
/// chain d_1 | d_2 | ... , entries nonnegative, zeros trailing.
struct SnfDecomposition {
  IntMatrix u, s, v;
};

namespace detail {

// Quotient q with a - q*p in [0, |p|).
inline BigInt euclidean_quotient(const BigInt& a, const BigInt& p) {
  BigInt q = a / p;
  if (a - q * p < 0) q -= (p > 0 ? 1 : -1);
  return q;
}

}  // namespace detail

/// Smith normal form. Deterministic: the pivot is the smallest nonzero
/// absolute entry of the working submatrix, ties broken by lowest
/// (row, column) index.
inline SnfDecomposition smith_normal_form(IntMatrix m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  if (rows == 0 || cols == 0)
    throw std::invalid_argument("smith_normal_form: empty matrix");
  IntMatrix u = IntMatrix::identity(rows);
  IntMatrix v = IntMatrix::identity(cols);

  auto swap_rows = [&](std::size_t a, std::size_t b) {
    for (std::size_t j = 0; j < cols; ++j) std::swap(m.at(a, j), m.at(b, j));
    for (std::size_t j = 0; j < rows; ++j) std::swap(u.at(a, j), u.at(b, j));
  };
  auto swap_cols = [&](std::size_t a, std::size_t b) {
    for (std::size_t i = 0; i < rows; ++i) std::swap(m.at(i, a), m.at(i, b));
    for (std::size_t i = 0; i < cols; ++i) std::swap(v.at(i, a), v.at(i, b));
  };
  // row[dst] += q * row[src]
  auto add_row = [&](std::size_t dst, std::size_t src, const BigInt& q) {
    for (std::size_t j = 0; j < cols; ++j) m.at(dst, j) += q * m.at(src, j);
    for (std::size_t j = 0; j < rows; ++j) u.at(dst, j) += q * u.at(src, j);
  };
  auto add_col = [&](std::size_t dst, std::size_t src, const BigInt& q) {
    for (std::size_t i = 0; i < rows; ++i) m.at(i, dst) += q * m.at(i, src);
    for (std::size_t i = 0; i < cols; ++i) v.at(i, dst) += q * v.at(i, src);
  };

  const std::size_t steps = std::min(rows, cols);
  for (std::size_t t = 0; t < steps; ++t) {
    // Pivot selection over the submatrix (t.., t..).
    std::size_t pr = rows, pc = cols;
    BigInt best;
    for (std::size_t r = t; r < rows; ++r)
      for (std::size_t c = t; c < cols; ++c) {
        const BigInt& e = m.at(r, c);
        if (e == 0) continue;
        BigInt a = abs(e);
        if (pr == rows || a < best) {
          best = a;
          pr = r;
          pc = c;
        }
      }
    if (pr == rows) break;  // submatrix is all zero
    if (pr != t) swap_rows(t, pr);
    if (pc != t) swap_cols(t, pc);

    for (bool settled = false; !settled;) {
      // Clear column t; a nonzero remainder is strictly smaller than the
      // pivot, so swapping it up makes progress.
      bool col_clean = false;
      while (!col_clean) {
        col_clean = true;
        for (std::size_t r = t + 1; r < rows; ++r) {
          if (m.at(r, t) == 0) continue;
          BigInt q = detail::euclidean_quotient(m.at(r, t), m.at(t, t));
          if (q != 0) add_row(r, t, -q);
          if (m.at(r, t) != 0) {
            swap_rows(t, r);
            col_clean = false;
            break;
          }
        }
      }
      // Clear row t; a column swap reintroduces entries in column t, so
      // restart the clearing loop in that case.
      bool row_swapped = false;
      for (std::size_t c = t + 1; c < cols; ++c) {
        if (m.at(t, c) == 0) continue;
        BigInt q = detail::euclidean_quotient(m.at(t, c), m.at(t, t));
        if (q != 0) add_col(c, t, -q);
        if (m.at(t, c) != 0) {
          swap_cols(t, c);
          row_swapped = true;
          break;
        }
      }
      if (row_swapped) continue;
      // Row and column are clear; enforce that the pivot divides the rest
      // of the submatrix so the diagonal forms a divisibility chain.
      settled = true;
      for (std::size_t r = t + 1; r < rows && settled; ++r)
        for (std::size_t c = t + 1; c < cols && settled; ++c)
          if (m.at(r, c) % m.at(t, t) != 0) {
            add_row(t, r, 1);
            settled = false;
          }
    }
    if (m.at(t, t) < 0) {
      for (std::size_t j = 0; j < cols; ++j) m.at(t, j) = -m.at(t, j);
      for (std::size_t j = 0; j < rows; ++j) u.at(t, j) = -u.at(t, j);
    }
  }
  return SnfDecomposition{std::move(u), std::move(m), std::move(v)};
}

/// Additive generator of a coset of the mod-n kernel.
struct KernelGenerator {
  std::vector<std::int64_t> tuple;
  std::int64_t order = 1;  // additive order mod n
};

/// Affine parameterization of the solution set of A*x = b (mod n):
/// { particular + sum c_i * gen_i : 0 <= c_i < order_i } taken mod n.
struct SolutionSpace {
  std::int64_t modulus = 1;
  std::vector<std::int64_t> particular;
  std::vector<KernelGenerator> kernel_gens;
  // True when the mixed-radix sweep over the generators hits every solution
  // exactly once (the case for spaces produced by solve_mod_linear).
  bool independent = false;

  BigInt combination_count() const {
    BigInt total = 1;
    for (const auto& g : kernel_gens) total *= g.order;
    return total;
  }
};

namespace detail {

inline std::int64_t mod_reduce(const BigInt& x, std::int64_t n) {
  BigInt r = x % n;
  if (r < 0) r += n;
  return static_cast<std::int64_t>(r);
}

inline std::int64_t mod_inverse(std::int64_t a, std::int64_t n) {
  // extended gcd; requires gcd(a, n) == 1
  std::int64_t t = 0,nt = 1, r = n, nr = a % n;
  while (nr != 0) {
    std::int64_t q = r / nr;
    std::int64_t tmp = t - q * nt;
    t = nt;
    nt = tmp;
    tmp = r - q * nr;
    r = nr;
    nr = tmp;
  }
  if (r != 1) throw std::logic_error("mod_inverse: not invertible");
  return ((t % n) + n) % n;
}

}  // namespace detail

/// Solve A*x = b (mod n) given a precomputed SNF of A. Returns std::nullopt
/// exactly when the system has no solution mod n.
inline std::optional<SolutionSpace> solve_mod_linear(const SnfDecomposition& snf,
                                                     const std::vector<BigInt>& b,
                                                     std::int64_t n) {
  if (n < 1) throw std::invalid_argument("solve_mod_linear: modulus must be >= 1");
  if (n > (std::int64_t(1) << 31))
    throw std::invalid_argument("solve_mod_linear: modulus too large");
  const std::size_t rows = snf.s.rows(), cols = snf.s.cols();
  if (b.size() != rows)
    throw std::invalid_argument("solve_mod_linear: dimension mismatch");

  // Transformed right-hand side c = U*b mod n.
  std::vector<std::int64_t> c(rows);
  for (std::size_t r = 0; r < rows; ++r) {
    BigInt acc = 0;
    for (std::size_t i = 0; i < rows; ++i) acc += snf.u.at(r, i) * b[i];
    c[r] = detail::mod_reduce(acc, n);
  }

  // Decoupled scalar congruences s_i * z_i = c_i (mod n).
  std::vector<std::int64_t> z0(cols, 0);
  std::vector<std::pair<std::size_t, std::int64_t>> free_vars;  // (index, order)
  for (std::size_t i = 0; i < cols; ++i) {
    std::int64_t s = i < rows ? detail::mod_reduce(snf.s.at(i, i), n) : 0;
    std::int64_t ci = i < rows ? c[i] : 0;
    std::int64_t g = std::gcd(s, n);
    if (g == 0) g = n;
    if (ci % g != 0) return std::nullopt;
    std::int64_t step = n / g;
    if (step > 1)
      z0[i] = (ci / g) % step * detail::mod_inverse((s / g) % step, step) % step;
    if (g > 1) free_vars.emplace_back(i, g);
  }
  for (std::size_t i = cols; i < rows; ++i)
    if (c[i] % n != 0) return std::nullopt;

  SolutionSpace sp;
  sp.modulus = n;
  sp.independent = true;
  sp.particular.resize(cols);
  for (std::size_t r = 0; r < cols; ++r) {
    BigInt acc = 0;
    for (std::size_t i = 0; i < cols; ++i)
      if (z0[i] != 0) acc += snf.v.at(r, i) * z0[i];
    sp.particular[r] = detail::mod_reduce(acc, n);
  }
  for (auto [i, g] : free_vars) {
    KernelGenerator gen;
    gen.order = g;
    gen.tuple.resize(cols);
    std::int64_t step = n / g;
    for (std::size_t r = 0; r < cols; ++r)
      gen.tuple[r] = detail::mod_reduce(snf.v.at(r, i) * step, n);
    sp.kernel_gens.push_back(std::move(gen));
  }
  return sp;
}

inline std::optional<SolutionSpace> solve_mod_linear(const IntMatrix& a,
                                                     const std::vector<BigInt>& b,
                                                     std::int64_t n) {
  return solve_mod_linear(smith_normal_form(a), b, n);
}

/// Lazy sweep over a SolutionSpace. For spaces produced by solve_mod_linear
/// the mixed-radix counter visits each solution exactly once and tuples are
/// randomly addressable; hand-built spaces with overlapping generators fall
/// back to a seen-set.
class SolutionEnumerator {
 public:
  SolutionEnumerator(const SolutionSpace& space, std::uint64_t cap)
      : space_(space), cap_(cap), current_(space.particular), digits_(space.kernel_gens.size(), 0) {
    if (cap == 0) throw std::invalid_argument("enumeration cap must be >= 1");
  }

  /// Fills `out` with the next distinct solution; false when exhausted or
  /// the cap has been reached (query truncated() to distinguish). The flag is
  /// set only when a distinct solution beyond the cap actually exists.
  bool next(std::vector<std::int64_t>& out) {
    if (truncated_) return false;
    while (!done_) {
      bool fresh = space_.independent || seen_.insert(current_).second;
      if (fresh) {
        if (yielded_ == cap_) {
          truncated_ = true;
          return false;
        }
        out = current_;
        ++yielded_;
        advance();
        return true;
      }
      advance();
    }
    return false;
  }

  bool truncated() const { return truncated_; }
  std::uint64_t yielded() const { return yielded_; }

  /// Number of raw counter combinations (equals the number of distinct
  /// solutions when the space is independent).
  BigInt combination_count() const { return space_.combination_count(); }

  /// Positions the sweep at `index` (independent spaces only), so the next
  /// call to next() yields tuple_at(index).
  void seek(const BigInt& index) {
    if (!space_.independent)
      throw std::logic_error("seek requires an independent solution space");
    current_ = tuple_at(index);
    BigInt rest = index;
    for (std::size_t i = 0; i < digits_.size(); ++i) {
      digits_[i] = static_cast<std::int64_t>(rest % space_.kernel_gens[i].order);
      rest /= space_.kernel_gens[i].order;
    }
    done_ = rest != 0;
  }

  /// Random access for independent spaces: the tuple the sequential sweep
  /// yields at position `index`.
  std::vector<std::int64_t> tuple_at(const BigInt& index) const {
    if (!space_.independent)
      throw std::logic_error("tuple_at requires an independent solution space");
    std::vector<std::int64_t> x = space_.particular;
    BigInt rest = index;
    const std::int64_t n = space_.modulus;
    for (const auto& gen : space_.kernel_gens) {
      std::int64_t digit = static_cast<std::int64_t>(rest % gen.order);
      rest /= gen.order;
      if (digit != 0)
        for (std::size_t r = 0; r < x.size(); ++r)
          x[r] = (x[r] + digit * gen.tuple[r]) % n;
    }
    return x;
  }

 private:
  void advance() {
    const std::int64_t n = space_.modulus;
    for (std::size_t i = 0; i < digits_.size(); ++i) {
      // order_i * gen_i = 0 (mod n), so adding the generator once per
      // increment is correct across rollovers too.
      for (std::size_t r = 0; r < current_.size(); ++r)
        current_[r] = (current_[r] + space_.kernel_gens[i].tuple[r]) % n;
      if (++digits_[i] < space_.kernel_gens[i].order) return;
      digits_[i] = 0;
    }
    done_ = true;
  }

  const SolutionSpace& space_;
  std::uint64_t cap_;
  std::uint64_t yielded_ = 0;
  bool done_ = false;
  bool truncated_ = false;
  std::vector<std::int64_t> current_;
  std::vector<std::int64_t> digits_;
  std::set<std::vector<std::int64_t>> seen_;
};

/// Convenience wrapper collecting up to `cap` distinct solutions.
inline std::vector<std::vector<std::int64_t>> enumerate_solutions(
    const SolutionSpace& space, std::uint64_t cap, bool* truncated = nullptr) {
  SolutionEnumerator it(space, cap);
  std::vector<std::vector<std::int64_t>> out;
  std::vector<std::int64_t> x;
  while (it.next(x)) out.push_back(x);
  if (truncated) *truncated = it.truncated();
  return out;
}

}  // namespace closedchroma
