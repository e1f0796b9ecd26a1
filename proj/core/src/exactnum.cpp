#include "esph/exactnum.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <utility>

#include "esph/errors.hpp"

namespace esph {

const char* to_string(Sign s) {
  switch (s) {
    case Sign::Negative: return "Negative";
    case Sign::Zero: return "Zero";
    case Sign::Positive: return "Positive";
  }
  return "?";
}

namespace {

bool all_digits(std::string_view s) {
  return !s.empty() &&
         std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c) != 0; });
}

BigInt pow10(unsigned long e) {
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
  return r;
}

std::optional<Scalar> parse_decimal(std::string_view s) {
  bool negative = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  long exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_part = s.substr(e + 1);
    s = s.substr(0, e);
    bool exp_negative = false;
    if (!exp_part.empty() && (exp_part.front() == '+' || exp_part.front() == '-')) {
      exp_negative = exp_part.front() == '-';
      exp_part.remove_prefix(1);
    }
    if (!all_digits(exp_part) || exp_part.size() > 6) return std::nullopt;
    exponent = std::stol(std::string(exp_part));
    if (exp_negative) exponent = -exponent;
  }
  std::string_view int_part = s;
  std::string_view frac_part;
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    int_part = s.substr(0, dot);
    frac_part = s.substr(dot + 1);
    if (int_part.empty() && frac_part.empty()) return std::nullopt;
    if (!frac_part.empty() && !all_digits(frac_part)) return std::nullopt;
  }
  if (!int_part.empty() && !all_digits(int_part)) return std::nullopt;
  if (int_part.empty() && frac_part.empty()) return std::nullopt;

  std::string digits = std::string(int_part) + std::string(frac_part);
  BigInt mantissa(digits.empty() ? std::string("0") : digits, 10);
  exponent -= static_cast<long>(frac_part.size());
  Scalar value;
  if (exponent >= 0) {
    value = Scalar(mantissa * pow10(static_cast<unsigned long>(exponent)));
  } else {
    value = Scalar(mantissa, pow10(static_cast<unsigned long>(-exponent)));
    value.canonicalize();
  }
  return negative ? Scalar(-value) : value;
}

}  // namespace

std::optional<Scalar> parse_scalar(std::string_view text) {
  if (text.empty()) return std::nullopt;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    std::string_view num = text.substr(0, slash);
    std::string_view den = text.substr(slash + 1);
    bool negative = false;
    if (!num.empty() && (num.front() == '+' || num.front() == '-')) {
      negative = num.front() == '-';
      num.remove_prefix(1);
    }
    if (!all_digits(num) || !all_digits(den)) return std::nullopt;
    BigInt p(std::string(num), 10);
    BigInt q(std::string(den), 10);
    if (q == 0) return std::nullopt;
    if (negative) p = -p;
    Scalar v(p, q);
    v.canonicalize();
    return v;
  }
  return parse_decimal(text);
}

std::string to_string(const Scalar& v) { return v.get_str(); }

Scalar fraction(const BigInt& p, const BigInt& q) {
  if (q == 0) throw InputError("zero denominator");
  Scalar v(p, q);
  v.canonicalize();
  return v;
}

VectorD& VectorD::operator+=(const VectorD& o) {
  if (o.dim() != dim()) throw InputError("vector dimension mismatch");
  for (std::size_t i = 0; i < dim(); ++i) coords_[i] += o.coords_[i];
  return *this;
}

VectorD& VectorD::operator-=(const VectorD& o) {
  if (o.dim() != dim()) throw InputError("vector dimension mismatch");
  for (std::size_t i = 0; i < dim(); ++i) coords_[i] -= o.coords_[i];
  return *this;
}

VectorD& VectorD::operator*=(const Scalar& k) {
  for (auto& c : coords_) c *= k;
  return *this;
}

VectorD operator+(VectorD a, const VectorD& b) { return a += b; }
VectorD operator-(VectorD a, const VectorD& b) { return a -= b; }
VectorD operator*(VectorD a, const Scalar& k) { return a *= k; }

Scalar dot(const VectorD& a, const VectorD& b) {
  if (a.dim() != b.dim()) throw InputError("vector dimension mismatch");
  Scalar s = 0;
  for (std::size_t i = 0; i < a.dim(); ++i) s += a[i] * b[i];
  return s;
}

Scalar squared_norm(const VectorD& a) { return dot(a, a); }

std::ostream& operator<<(std::ostream& os, const VectorD& v) {
  os << '(';
  for (std::size_t i = 0; i < v.dim(); ++i) {
    if (i) os << ", ";
    os << v[i].get_str();
  }
  return os << ')';
}

BigInt common_denominator(std::span<const Scalar> row) {
  BigInt l = 1;
  for (const auto& v : row) {
    if (v.get_den() != 1) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
  }
  return l;
}

std::vector<BigInt> clear_denominators(std::span<const Scalar> row) {
  const BigInt l = common_denominator(row);
  std::vector<BigInt> out;
  out.reserve(row.size());
  for (const auto& v : row) {
    BigInt q;
    mpz_divexact(q.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
    out.emplace_back(v.get_num() * q);
  }
  return out;
}

BigInt bareiss_determinant(std::vector<std::vector<BigInt>> m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  bool negate = false;
  BigInt prev = 1;
  BigInt t;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t r = k + 1;
      while (r < n && m[r][k] == 0) ++r;
      if (r == n) return 0;
      std::swap(m[k], m[r]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        // m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev, exact.
        mpz_mul(t.get_mpz_t(), m[i][k].get_mpz_t(), m[k][j].get_mpz_t());
        mpz_mul(m[i][j].get_mpz_t(), m[i][j].get_mpz_t(), m[k][k].get_mpz_t());
        mpz_sub(m[i][j].get_mpz_t(), m[i][j].get_mpz_t(), t.get_mpz_t());
        mpz_divexact(m[i][j].get_mpz_t(), m[i][j].get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = m[k][k];
  }
  BigInt det = m[n - 1][n - 1];
  return negate ? BigInt(-det) : det;
}

namespace {

std::vector<std::vector<BigInt>> integer_rows(std::span<const VectorD> rows, BigInt* scale) {
  const std::size_t n = rows.size();
  std::vector<std::vector<BigInt>> m;
  m.reserve(n);
  if (scale) *scale = 1;
  for (const auto& r : rows) {
    if (r.dim() != n) throw InputError("determinant of a non-square matrix");
    m.push_back(clear_denominators(r.coords()));
    if (scale) *scale *= common_denominator(r.coords());
  }
  return m;
}

}  // namespace

Scalar determinant(std::span<const VectorD> rows) {
  BigInt scale;
  auto m = integer_rows(rows, &scale);
  Scalar d(bareiss_determinant(std::move(m)), scale);
  d.canonicalize();
  return d;
}

namespace {

struct Approx {
  double det;
  double perm;  // permanent of the absolute values
};

// Laplace expansion along the first row over the columns in `mask`.
Approx laplace(const double (&m)[6][6], int n, int row, unsigned mask) {
  if (row == n - 1) {
    for (int c = 0; c < n; ++c) {
      if (mask & (1U << c)) return {m[row][c], std::abs(m[row][c])};
    }
  }
  Approx out{0, 0};
  int parity = 0;
  for (int c = 0; c < n; ++c) {
    if (!(mask & (1U << c))) continue;
    const Approx minor = laplace(m, n, row + 1, mask & ~(1U << c));
    const double term = m[row][c] * minor.det;
    out.det += parity ? -term : term;
    out.perm += std::abs(m[row][c]) * minor.perm;
    parity ^= 1;
  }
  return out;
}

// Sign from a floating-point evaluation when its error bound allows it.
// Entries carry a conversion error below one ulp; the expansion adds at most
// O(n^2) roundings relative to the permanent, bounded here with a margin.
std::optional<Sign> filtered_sign(const double (&m)[6][6], int n) {
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (!std::isfinite(m[i][j])) return std::nullopt;
    }
  }
  const Approx a = laplace(m, n, 0, (1U << n) - 1);
  if (!std::isfinite(a.perm) || a.perm < 1e-250) return std::nullopt;
  const double bound = (2.0 * n * n + 8.0 * n + 8.0) * 0x1p-53 * a.perm;
  if (a.det > bound) return Sign::Positive;
  if (a.det < -bound) return Sign::Negative;
  return std::nullopt;
}

constexpr int kFilterMax = 6;

std::optional<Sign> filtered_sign(std::span<const VectorD> rows) {
  const int n = static_cast<int>(rows.size());
  if (n == 0 || n > kFilterMax) return std::nullopt;
  double m[6][6];
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m[i][j] = rows[i][j].get_d();
  }
  return filtered_sign(m, n);
}

}  // namespace

Sign determinant_sign(std::span<const VectorD> rows) {
  for (const auto& r : rows) {
    if (r.dim() != rows.size()) throw InputError("determinant of a non-square matrix");
  }
  if (auto s = filtered_sign(rows)) return *s;
  return sign_of(bareiss_determinant(integer_rows(rows, nullptr)));
}

Sign determinant_sign(std::vector<std::vector<BigInt>> m) {
  const int n = static_cast<int>(m.size());
  for (const auto& r : m) {
    if (static_cast<int>(r.size()) != n) throw InputError("determinant of a non-square matrix");
  }
  if (n > 0 && n <= kFilterMax) {
    double a[6][6];
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) a[i][j] = m[i][j].get_d();
    }
    if (auto s = filtered_sign(a, n)) return *s;
  }
  return sign_of(bareiss_determinant(std::move(m)));
}

std::optional<VectorD> solve_linear(std::vector<VectorD> a, VectorD b) {
  const std::size_t n = a.size();
  if (b.dim() != n) throw InputError("solve_linear: size mismatch");
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv][col] == 0) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      const Scalar f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  VectorD x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
  return x;
}

namespace {

void check_simplex_shape(std::span<const VectorD> simplex) {
  if (simplex.empty()) throw InputError("empty simplex");
  const std::size_t k = simplex.size() - 1;
  for (const auto& p : simplex) {
    if (p.dim() != k) throw InputError("simplex of " + std::to_string(k + 1) +
                                       " points must live in dimension " + std::to_string(k));
  }
}

std::vector<VectorD> edge_rows(std::span<const VectorD> simplex) {
  std::vector<VectorD> rows;
  rows.reserve(simplex.size() - 1);
  for (std::size_t i = 1; i < simplex.size(); ++i) rows.push_back(simplex[i] - simplex[0]);
  return rows;
}

}  // namespace

Sign orient(std::span<const VectorD> simplex) {
  check_simplex_shape(simplex);
  return determinant_sign(edge_rows(simplex));
}

Sign in_sphere(std::span<const VectorD> simplex, const VectorD& query) {
  check_simplex_shape(simplex);
  const std::size_t k = simplex.size() - 1;
  if (query.dim() != k) throw InputError("in_sphere: query dimension mismatch");
  const Sign o = orient(simplex);
  if (o == Sign::Zero) throw DegenerateSimplex("in_sphere: degenerate simplex");

  const Scalar q2 = squared_norm(query);
  std::vector<VectorD> rows;
  rows.reserve(k + 1);
  for (const auto& p : simplex) {
    VectorD r = p - query;
    r.push_back(squared_norm(p) - q2);
    rows.push_back(std::move(r));
  }
  // At the circumcenter the lifted determinant equals r^2 (-1)^k det[p_i - p_0].
  const Sign parity = (k % 2 == 0) ? Sign::Positive : Sign::Negative;
  return determinant_sign(rows) * o * parity;
}

Scalar simplex_det(std::span<const VectorD> simplex) {
  check_simplex_shape(simplex);
  return determinant(edge_rows(simplex));
}

Scalar simplex_volume(std::span<const VectorD> simplex) {
  Scalar v = abs(simplex_det(simplex));
  for (std::size_t i = 2; i < simplex.size(); ++i) v /= static_cast<unsigned long>(i);
  return v;
}

}  // namespace esph
