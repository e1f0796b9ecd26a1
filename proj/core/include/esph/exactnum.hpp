#pragma once

// Exact rational arithmetic, coordinate vectors, determinants and the two
// sign predicates (orientation, in-sphere) everything else is built on.
//
// Orientation convention: orient(p0..pk) is the sign of det[p1-p0; ...;
// pk-p0], so the counterclockwise unit triangle and the right-handed unit
// tetrahedron are Positive.

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace esph {

using BigInt = mpz_class;
// Always canonical: gmpxx arithmetic keeps gcd(num, den) = 1 and den > 0.
using Scalar = mpq_class;

enum class Sign : int { Negative = -1, Zero = 0, Positive = 1 };

inline Sign sign_of(const Scalar& v) { return static_cast<Sign>(sgn(v)); }
inline Sign sign_of(const BigInt& v) { return static_cast<Sign>(sgn(v)); }
inline Sign operator-(Sign s) { return static_cast<Sign>(-static_cast<int>(s)); }
inline Sign operator*(Sign a, Sign b) {
  return static_cast<Sign>(static_cast<int>(a) * static_cast<int>(b));
}
const char* to_string(Sign s);

// Canonical p/q (q != 0).
Scalar fraction(const BigInt& p, const BigInt& q);

// Parses "p/q" (q > 0) or a decimal literal such as "-0.25" or "1.5e-3".
// Decimals become exact fractions with a power-of-ten denominator.
std::optional<Scalar> parse_scalar(std::string_view text);

// "p" for integers, "p/q" otherwise.
std::string to_string(const Scalar& v);

// Fixed-length coordinate vector.
class VectorD {
 public:
  VectorD() = default;
  explicit VectorD(std::size_t dim) : coords_(dim) {}
  VectorD(std::initializer_list<Scalar> init) : coords_(init) {}
  explicit VectorD(std::vector<Scalar> coords) : coords_(std::move(coords)) {}

  std::size_t dim() const noexcept { return coords_.size(); }
  Scalar& operator[](std::size_t i) { return coords_[i]; }
  const Scalar& operator[](std::size_t i) const { return coords_[i]; }

  auto begin() noexcept { return coords_.begin(); }
  auto end() noexcept { return coords_.end(); }
  auto begin() const noexcept { return coords_.begin(); }
  auto end() const noexcept { return coords_.end(); }

  const std::vector<Scalar>& coords() const noexcept { return coords_; }
  void push_back(Scalar v) { coords_.push_back(std::move(v)); }

  VectorD& operator+=(const VectorD& o);
  VectorD& operator-=(const VectorD& o);
  VectorD& operator*=(const Scalar& k);

  friend bool operator==(const VectorD&, const VectorD&) = default;

 private:
  std::vector<Scalar> coords_;
};

VectorD operator+(VectorD a, const VectorD& b);
VectorD operator-(VectorD a, const VectorD& b);
VectorD operator*(VectorD a, const Scalar& k);
Scalar dot(const VectorD& a, const VectorD& b);
Scalar squared_norm(const VectorD& a);
std::ostream& operator<<(std::ostream& os, const VectorD& v);

// Smallest positive integer k with k * row integral, and the scaled row.
BigInt common_denominator(std::span<const Scalar> row);
std::vector<BigInt> clear_denominators(std::span<const Scalar> row);

// Fraction-free Bareiss elimination. Takes a square matrix by value.
BigInt bareiss_determinant(std::vector<std::vector<BigInt>> m);

// Exact determinant of a square rational matrix given as rows. Each row is
// scaled to integers first, so the elimination itself never forms fractions.
Scalar determinant(std::span<const VectorD> rows);
Sign determinant_sign(std::span<const VectorD> rows);
Sign determinant_sign(std::vector<std::vector<BigInt>> m);

// Solves A x = b exactly; nullopt if A is singular.
std::optional<VectorD> solve_linear(std::vector<VectorD> a, VectorD b);

// Sign of det[p_i - p_0], i = 1..k, for k+1 points in dimension k.
Sign orient(std::span<const VectorD> simplex);

// Positive iff `query` is strictly inside the circumsphere of the k+1 simplex
// points (dimension k), Negative iff strictly outside, Zero if cospherical.
// Independent of the order of the simplex points.
Sign in_sphere(std::span<const VectorD> simplex, const VectorD& query);

// Signed volume times k! (the determinant of edge vectors).
Scalar simplex_det(std::span<const VectorD> simplex);

// Unsigned volume |det| / k!.
Scalar simplex_volume(std::span<const VectorD> simplex);

}  // namespace esph
