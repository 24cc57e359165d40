#include <gmp.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "so3cover/hull4d.hpp"

namespace so3cover {
namespace {

class Mpz {
 public:
  Mpz() { mpz_init(v_); }
  ~Mpz() { mpz_clear(v_); }
  Mpz(const Mpz&) = delete;
  Mpz& operator=(const Mpz&) = delete;
  mpz_ptr get() { return v_; }
  mpz_srcptr get() const { return v_; }

 private:
  mpz_t v_;
};

// Sets out = x * 2^(-min_exp) exactly. x must be representable as m * 2^e
// with e >= min_exp, which holds for min_exp from lowest_exponent().
void set_scaled(mpz_ptr out, double x, int min_exp) {
  if (x == 0.0) {
    mpz_set_ui(out, 0);
    return;
  }
  int e = 0;
  const double m = std::frexp(x, &e);  // x = m * 2^e, 0.5 <= |m| < 1
  const double mant = std::ldexp(m, 53);  // integer valued
  mpz_set_d(out, mant);
  const int shift = e - 53 - min_exp;
  if (shift > 0) mpz_mul_2exp(out, out, static_cast<mp_bitcnt_t>(shift));
}

int lowest_exponent(std::span<const double> xs) {
  int lo = std::numeric_limits<int>::max();
  for (double x : xs) {
    if (x == 0.0) continue;
    int e = 0;
    std::frexp(x, &e);
    lo = std::min(lo, e - 53);
  }
  return lo == std::numeric_limits<int>::max() ? 0 : lo;
}

// det of a 4x4 integer matrix given row-major as 16 entries.
void det4(mpz_ptr out, std::array<Mpz, 16>& m) {
  // Laplace expansion along rows (0,1) x rows (2,3) using 2x2 minors.
  static constexpr int pairs[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
  static constexpr int comp[6] = {5, 4, 3, 2, 1, 0};  // index of complementary pair
  static constexpr int sgn[6] = {1, -1, 1, 1, -1, 1};
  Mpz top[6], bot[6], t;
  for (int k = 0; k < 6; ++k) {
    const int a = pairs[k][0], b = pairs[k][1];
    mpz_mul(top[k].get(), m[0 * 4 + a].get(), m[1 * 4 + b].get());
    mpz_mul(t.get(), m[0 * 4 + b].get(), m[1 * 4 + a].get());
    mpz_sub(top[k].get(), top[k].get(), t.get());
    mpz_mul(bot[k].get(), m[2 * 4 + a].get(), m[3 * 4 + b].get());
    mpz_mul(t.get(), m[2 * 4 + b].get(), m[3 * 4 + a].get());
    mpz_sub(bot[k].get(), bot[k].get(), t.get());
  }
  mpz_set_ui(out, 0);
  for (int k = 0; k < 6; ++k) {
    mpz_mul(t.get(), top[k].get(), bot[comp[k]].get());
    if (sgn[k] > 0) {
      mpz_add(out, out, t.get());
    } else {
      mpz_sub(out, out, t.get());
    }
  }
}

// 3x3 integer determinant of rows r0, r1, r2 restricted to columns c0, c1, c2.
void det3(mpz_ptr out, const std::array<Mpz, 12>& m, int c0, int c1, int c2) {
  Mpz a, b, t;
  // r0 . (r1 x r2) over the chosen columns
  mpz_mul(a.get(), m[4 + c1].get(), m[8 + c2].get());
  mpz_mul(t.get(), m[4 + c2].get(), m[8 + c1].get());
  mpz_sub(a.get(), a.get(), t.get());
  mpz_mul(out, m[c0].get(), a.get());

  mpz_mul(a.get(), m[4 + c0].get(), m[8 + c2].get());
  mpz_mul(t.get(), m[4 + c2].get(), m[8 + c0].get());
  mpz_sub(a.get(), a.get(), t.get());
  mpz_mul(b.get(), m[c1].get(), a.get());
  mpz_sub(out, out, b.get());

  mpz_mul(a.get(), m[4 + c0].get(), m[8 + c1].get());
  mpz_mul(t.get(), m[4 + c1].get(), m[8 + c0].get());
  mpz_sub(a.get(), a.get(), t.get());
  mpz_mul(b.get(), m[c2].get(), a.get());
  mpz_add(out, out, b.get());
}

double det4_double(const std::array<double, 16>& m, double* permanent) {
  static constexpr int pairs[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
  static constexpr int comp[6] = {5, 4, 3, 2, 1, 0};
  static constexpr double sgn[6] = {1, -1, 1, 1, -1, 1};
  double top[6], bot[6], ptop[6], pbot[6];
  for (int k = 0; k < 6; ++k) {
    const int a = pairs[k][0], b = pairs[k][1];
    top[k] = m[a] * m[4 + b] - m[b] * m[4 + a];
    bot[k] = m[8 + a] * m[12 + b] - m[8 + b] * m[12 + a];
    ptop[k] = std::abs(m[a] * m[4 + b]) + std::abs(m[b] * m[4 + a]);
    pbot[k] = std::abs(m[8 + a] * m[12 + b]) + std::abs(m[8 + b] * m[12 + a]);
  }
  double det = 0.0, perm = 0.0;
  for (int k = 0; k < 6; ++k) {
    det += sgn[k] * top[k] * bot[comp[k]];
    perm += ptop[k] * pbot[comp[k]];
  }
  *permanent = perm;
  return det;
}

}  // namespace

int orient4_exact(const Vec4& a, const Vec4& b, const Vec4& c, const Vec4& d, const Vec4& p) {
  std::array<double, 20> raw{};
  const std::array<const Vec4*, 5> pts{&a, &b, &c, &d, &p};
  for (std::size_t i = 0; i < 5; ++i) {
    for (std::size_t j = 0; j < 4; ++j) raw[i * 4 + j] = (*pts[i])[j];
  }
  const int lo = lowest_exponent(raw);
  std::array<Mpz, 4> base;
  for (std::size_t j = 0; j < 4; ++j) set_scaled(base[j].get(), a[j], lo);
  std::array<Mpz, 16> m;
  Mpz tmp;
  for (std::size_t i = 1; i < 5; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      set_scaled(tmp.get(), (*pts[i])[j], lo);
      mpz_sub(m[(i - 1) * 4 + j].get(), tmp.get(), base[j].get());
    }
  }
  Mpz det;
  det4(det.get(), m);
  return mpz_sgn(det.get());
}

int orient4(const Vec4& a, const Vec4& b, const Vec4& c, const Vec4& d, const Vec4& p) {
  std::array<double, 16> m{};
  const std::array<const Vec4*, 4> rows{&b, &c, &d, &p};
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) m[i * 4 + j] = (*rows[i])[j] - a[j];
  }
  double perm = 0.0;
  const double det = det4_double(m, &perm);
  if (std::abs(det) > kOrientEpsilon * perm) return det > 0 ? 1 : -1;
  return orient4_exact(a, b, c, d, p);
}

Vec4 cross_product_4d_exact(const Vec4& a, const Vec4& b, const Vec4& c) {
  std::array<double, 12> raw{};
  for (std::size_t j = 0; j < 4; ++j) {
    raw[j] = a[j];
    raw[4 + j] = b[j];
    raw[8 + j] = c[j];
  }
  const int lo = lowest_exponent(raw);
  std::array<Mpz, 12> m;
  for (std::size_t i = 0; i < 12; ++i) set_scaled(m[i].get(), raw[i], lo);
  Mpz comp[4];
  det3(comp[0].get(), m, 1, 2, 3);
  det3(comp[1].get(), m, 0, 2, 3);
  det3(comp[2].get(), m, 0, 1, 3);
  det3(comp[3].get(), m, 0, 1, 2);
  mpz_neg(comp[0].get(), comp[0].get());
  mpz_neg(comp[2].get(), comp[2].get());

  // Scale down by the largest magnitude before converting so the double does
  // not overflow; only the direction and relative size matter to callers,
  // but restore the true scale 2^(3*lo) where representable.
  long max_bits = 0;
  for (auto& v : comp) max_bits = std::max<long>(max_bits, static_cast<long>(mpz_sizeinbase(v.get(), 2)));
  const long drop = std::max<long>(0, max_bits - 60);
  Vec4 out;
  for (std::size_t i = 0; i < 4; ++i) {
    mpz_tdiv_q_2exp(comp[i].get(), comp[i].get(), static_cast<mp_bitcnt_t>(drop));
    out[i] = std::ldexp(mpz_get_d(comp[i].get()), static_cast<int>(drop + 3L * lo));
  }
  return out;
}

}  // namespace so3cover
