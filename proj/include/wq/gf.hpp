#pragma once
// Exact arithmetic over GF(p) and the Artin-Schreier extension GF(p)[xi]/(xi^p - xi - 1).

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace wq {

struct error : std::runtime_error {
  explicit error(const std::string& m) : std::runtime_error(m) {}
};

inline bool is_prime(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

class Fp;

// Field context for GF(p). Elements carry their modulus too; the context
// exists so generic code can mint zeros/ones of the right field.
struct GF {
  uint32_t p;
  explicit GF(uint32_t p_) : p(p_) {
    if (!is_prime(p)) throw error("GF: modulus " + std::to_string(p) + " is not prime");
  }
  bool operator==(const GF& o) const { return p == o.p; }
  inline Fp zero() const;
  inline Fp one() const;
  inline Fp make(int64_t v) const;
};

class Fp {
  uint32_t v_, p_;

  static void check(const Fp& a, const Fp& b) {
    if (a.p_ != b.p_)
      throw error("Fp: modulus mismatch " + std::to_string(a.p_) + " vs " + std::to_string(b.p_));
  }

 public:
  using Ctx = GF;

  Fp(int64_t v, uint32_t p) : p_(p) {
    if (p == 0) throw error("Fp: zero modulus");
    int64_t r = v % static_cast<int64_t>(p);
    if (r < 0) r += p;
    v_ = static_cast<uint32_t>(r);
  }

  uint32_t val() const { return v_; }
  uint32_t modulus() const { return p_; }
  Ctx ctx() const { return GF(p_); }
  bool is_zero() const { return v_ == 0; }

  Fp operator+(const Fp& o) const { check(*this, o); return Fp(int64_t(v_) + o.v_, p_); }
  Fp operator-(const Fp& o) const { check(*this, o); return Fp(int64_t(v_) - o.v_, p_); }
  Fp operator*(const Fp& o) const { check(*this, o); return Fp(int64_t(v_) * o.v_, p_); }
  Fp operator-() const { return Fp(-int64_t(v_), p_); }
  Fp& operator+=(const Fp& o) { return *this = *this + o; }
  Fp& operator-=(const Fp& o) { return *this = *this - o; }
  Fp& operator*=(const Fp& o) { return *this = *this * o; }
  bool operator==(const Fp& o) const { check(*this, o); return v_ == o.v_; }
  bool operator!=(const Fp& o) const { return !(*this == o); }

  Fp inv() const {
    if (v_ == 0) throw error("Fp: inverse of zero");
    // extended Euclid
    int64_t a = v_, b = p_, x0 = 1, x1 = 0;
    while (b) {
      int64_t q = a / b;
      int64_t t = a - q * b; a = b; b = t;
      t = x0 - q * x1; x0 = x1; x1 = t;
    }
    return Fp(x0, p_);
  }

  Fp operator/(const Fp& o) const { return *this * o.inv(); }

  Fp pow(uint64_t e) const {
    Fp r(1, p_), b = *this;
    while (e) {
      if (e & 1) r *= b;
      b *= b;
      e >>= 1;
    }
    return r;
  }
};

inline Fp GF::zero() const { return Fp(0, p); }
inline Fp GF::one() const { return Fp(1, p); }
inline Fp GF::make(int64_t v) const { return Fp(v, p); }

// Roots of a polynomial (coefficients c[0] + c[1] x + ...) by exhaustive
// evaluation; returns ascending residues. Intended for small p.
inline std::vector<uint32_t> poly_roots(const std::vector<Fp>& coeffs, const GF& f,
                                        uint32_t bound = 1u << 20) {
  if (f.p > bound) throw error("poly_roots: modulus exceeds configured bound");
  for (const auto& c : coeffs)
    if (c.modulus() != f.p) throw error("poly_roots: coefficient modulus mismatch");
  std::vector<uint32_t> roots;
  for (uint32_t x = 0; x < f.p; ++x) {
    Fp acc = f.zero(), xe = f.one(), xv = f.make(x);
    for (const auto& c : coeffs) {
      acc += c * xe;
      xe *= xv;
    }
    if (acc.is_zero()) roots.push_back(x);
  }
  return roots;
}

class Fq;

// Field context for GF(p^p) realized as GF(p)[xi]/(xi^p - xi - 1).
struct GFExt {
  uint32_t p;
  explicit inline GFExt(uint32_t p_);
  bool operator==(const GFExt& o) const { return p == o.p; }
  inline Fq zero() const;
  inline Fq one() const;
  inline Fq make(int64_t v) const;
  inline Fq xi() const;
  inline Fq embed(const Fp& a) const;
};

// Element of GF(p)[xi]/(xi^p - xi - 1): coefficient vector of length p.
class Fq {
  std::vector<uint32_t> c_;  // c_[k] is the xi^k coefficient
  uint32_t p_;

  static void check(const Fq& a, const Fq& b) {
    if (a.p_ != b.p_) throw error("Fq: modulus mismatch");
  }

 public:
  using Ctx = GFExt;

  Fq(std::vector<uint32_t> c, uint32_t p) : c_(std::move(c)), p_(p) {
    if (c_.size() != p_) throw error("Fq: coefficient vector must have length p");
    for (auto& x : c_) x %= p_;
  }

  static Fq scalar(int64_t v, uint32_t p) {
    std::vector<uint32_t> c(p, 0);
    int64_t r = v % static_cast<int64_t>(p);
    if (r < 0) r += p;
    c[0] = static_cast<uint32_t>(r);
    return Fq(std::move(c), p);
  }

  uint32_t modulus() const { return p_; }
  Ctx ctx() const { return GFExt(p_); }
  const std::vector<uint32_t>& coeffs() const { return c_; }

  bool is_zero() const {
    for (auto x : c_)
      if (x) return false;
    return true;
  }
  // true when the element lies in the prime subfield
  bool is_scalar() const {
    for (size_t k = 1; k < c_.size(); ++k)
      if (c_[k]) return false;
    return true;
  }

  Fq operator+(const Fq& o) const {
    check(*this, o);
    std::vector<uint32_t> r(p_);
    for (uint32_t k = 0; k < p_; ++k) r[k] = (c_[k] + o.c_[k]) % p_;
    return Fq(std::move(r), p_);
  }
  Fq operator-(const Fq& o) const {
    check(*this, o);
    std::vector<uint32_t> r(p_);
    for (uint32_t k = 0; k < p_; ++k) r[k] = (c_[k] + p_ - o.c_[k]) % p_;
    return Fq(std::move(r), p_);
  }
  Fq operator-() const {
    std::vector<uint32_t> r(p_);
    for (uint32_t k = 0; k < p_; ++k) r[k] = (p_ - c_[k]) % p_;
    return Fq(std::move(r), p_);
  }

  Fq operator*(const Fq& o) const {
    check(*this, o);
    // schoolbook product, then reduce with xi^p = xi + 1
    std::vector<uint64_t> t(2 * p_ - 1, 0);
    for (uint32_t i = 0; i < p_; ++i) {
      if (!c_[i]) continue;
      for (uint32_t j = 0; j < p_; ++j) t[i + j] += uint64_t(c_[i]) * o.c_[j];
    }
    for (uint32_t k = 2 * p_ - 2; k >= p_; --k) {
      uint64_t v = t[k] % p_;
      t[k - p_ + 1] += v;
      t[k - p_] += v;
      t[k] = 0;
      if (k == p_) break;
    }
    std::vector<uint32_t> r(p_);
    for (uint32_t k = 0; k < p_; ++k) r[k] = static_cast<uint32_t>(t[k] % p_);
    return Fq(std::move(r), p_);
  }

  Fq& operator+=(const Fq& o) { return *this = *this + o; }
  Fq& operator-=(const Fq& o) { return *this = *this - o; }
  Fq& operator*=(const Fq& o) { return *this = *this * o; }
  bool operator==(const Fq& o) const { check(*this, o); return c_ == o.c_; }
  bool operator!=(const Fq& o) const { return !(*this == o); }

  Fq inv() const {
    if (is_zero()) throw error("Fq: inverse of zero");
    // extended Euclid in GF(p)[x] against m(x) = x^p - x - 1
    GF f(p_);
    auto deg = [](const std::vector<Fp>& a) {
      for (size_t k = a.size(); k-- > 0;)
        if (!a[k].is_zero()) return static_cast<int>(k);
      return -1;
    };
    std::vector<Fp> r0, r1, s0, s1;
    for (uint32_t k = 0; k <= p_; ++k) r0.push_back(f.zero());
    r0[0] = f.make(-1);
    r0[1] = f.make(-1);
    r0[p_] = f.one();
    for (uint32_t k = 0; k < p_; ++k) r1.push_back(f.make(c_[k]));
    r1.push_back(f.zero());
    s0.assign(p_ + 1, f.zero());
    s1.assign(p_ + 1, f.zero());
    s1[0] = f.one();
    while (deg(r1) > 0) {
      int d0 = deg(r0), d1 = deg(r1);
      if (d0 < d1) { std::swap(r0, r1); std::swap(s0, s1); continue; }
      Fp q = r0[d0] / r1[d1];
      int sh = d0 - d1;
      for (int k = 0; k <= d1; ++k) r0[k + sh] -= q * r1[k];
      for (int k = 0; k + sh <= int(p_); ++k) s0[k + sh] -= q * s1[k];
      if (deg(r0) < deg(r1)) { std::swap(r0, r1); std::swap(s0, s1); }
    }
    if (deg(r1) != 0) throw error("Fq: gcd with modulus is not constant");
    Fp lead = r1[0].inv();
    std::vector<uint32_t> out(p_);
    for (uint32_t k = 0; k < p_; ++k) out[k] = (s1[k] * lead).val();
    return Fq(std::move(out), p_);
  }

  Fq operator/(const Fq& o) const { return *this * o.inv(); }

  Fq pow(uint64_t e) const {
    Fq r = Fq::scalar(1, p_), b = *this;
    while (e) {
      if (e & 1) r *= b;
      b *= b;
      e >>= 1;
    }
    return r;
  }

  // Frobenius a -> a^p, computed as the substitution xi -> xi + 1.
  Fq frobenius() const {
    std::vector<uint32_t> r(p_, 0);
    // binom holds the expansion of (xi+1)^k, updated one Pascal row at a time
    std::vector<uint32_t> binom(p_, 0);
    binom[0] = 1;
    for (uint32_t k = 0;; ++k) {
      if (c_[k])
        for (uint32_t j = 0; j <= k; ++j)
          r[j] = (r[j] + uint64_t(c_[k]) * binom[j]) % p_;
      if (k + 1 == p_) break;
      for (uint32_t j = k + 1; j-- > 0;) binom[j + 1] = (binom[j + 1] + binom[j]) % p_;
    }
    return Fq(std::move(r), p_);
  }
};

inline GFExt::GFExt(uint32_t p_) : p(p_) {
  if (!is_prime(p)) throw error("GFExt: modulus is not prime");
  if (p < 3) throw error("GFExt: modulus too small");
}

inline Fq GFExt::zero() const { return Fq::scalar(0, p); }
inline Fq GFExt::one() const { return Fq::scalar(1, p); }
inline Fq GFExt::make(int64_t v) const { return Fq::scalar(v, p); }
inline Fq GFExt::xi() const {
  std::vector<uint32_t> c(p, 0);
  c[1] = 1;
  return Fq(std::move(c), p);
}
inline Fq GFExt::embed(const Fp& a) const {
  if (a.modulus() != p) throw error("GFExt: embed from wrong prime field");
  return Fq::scalar(a.val(), p);
}

// Sanity checks that GF(p)[xi]/(xi^p - xi - 1) really is a degree-p field
// extension: the modulus has no root in GF(p), xi^p = xi + 1, and the
// Frobenius orbit of xi has length exactly p.
inline void ext_field_self_check(const GFExt& f) {
  GF base(f.p);
  for (uint32_t c = 0; c < f.p; ++c) {
    Fp x = base.make(c);
    if ((x.pow(f.p) - x - base.one()).is_zero())
      throw error("ext_field_self_check: x^p - x - 1 has a rational root");
  }
  Fq xi = f.xi();
  if (xi.pow(f.p) != xi + f.one()) throw error("ext_field_self_check: xi^p != xi + 1");
  if (xi.frobenius() != xi.pow(f.p)) throw error("ext_field_self_check: frobenius mismatch");
  Fq orbit = xi;
  for (uint32_t k = 1; k < f.p; ++k) {
    orbit = orbit.frobenius();
    if (orbit == xi) throw error("ext_field_self_check: frobenius orbit shorter than p");
  }
  if (orbit.frobenius() != xi) throw error("ext_field_self_check: frobenius orbit longer than p");
}

}  // namespace wq
