#pragma once

// Exact arithmetic for astronomically large bound values.
//
// A Bound is a formal product  num/den * prod_i base_i^exp_i  with integer
// bases >= 2 and arbitrary-precision exponents.  Values produced by the
// catalog formulas are nonnegative integers (den == 1, all exponents >= 0);
// negative exponents and a denominator only appear for the formulas that
// carry exact rational intermediates such as f + (101/20)c.
//
// Comparison is exact: structural prime normalization first, then certified
// log10 bracketing with MPFR directed rounding at escalating precision, and
// exact integer materialization as the final fallback.

#include "gridforge/bigint.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace gridforge {

struct BoundError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Result of materialize(): either the exact integer value (ceiling applied
// when the exact value is a non-integer rational, flagged), or a refusal
// carrying the certified decimal digit count.
struct Materialized {
  bool ok = false;
  Int value;                // valid when ok
  bool ceiled = false;      // value is ceil of a non-integer rational
  size_t digits = 0;        // decimal digits (certified) in either case
};

class Bound {
 public:
  Bound() = default;  // value 1

  static Bound zero() {
    Bound b;
    b.zero_ = true;
    return b;
  }

  static Bound from_int(const Int& v) {
    if (v < 0) throw BoundError("bound values are nonnegative");
    if (v == 0) return zero();
    Bound b;
    b.num_ = v;
    return b;
  }

  static Bound from_rational(const Int& num, const Int& den) {
    if (den <= 0) throw BoundError("denominator must be positive");
    if (num < 0) throw BoundError("bound values are nonnegative");
    if (num == 0) return zero();
    Bound b;
    Int g = gcd(num, den);
    b.num_ = num / g;
    b.den_ = den / g;
    return b;
  }

  // base^exp as a Bound; base >= 2, exp may be any integer (negative allowed
  // for rational carriers).
  static Bound power(const Int& base, const Int& exp) {
    if (base < 2) throw BoundError("power base must be >= 2");
    Bound b;
    if (exp != 0) b.factors_[base] = exp;
    return b;
  }

  bool is_zero() const { return zero_; }

  Bound& operator*=(const Bound& o) {
    if (zero_ || o.zero_) { *this = zero(); return *this; }
    for (const auto& [b, e] : o.factors_) {
      Int& cur = factors_[b];
      cur += e;
      if (cur == 0) factors_.erase(b);
    }
    num_ *= o.num_;
    den_ *= o.den_;
    reduce();
    return *this;
  }

  friend Bound operator*(Bound a, const Bound& b) { a *= b; return a; }

  // Raise the whole product to a nonnegative power.
  Bound pow(const Int& e) const {
    if (e < 0) throw BoundError("negative bound power");
    if (e == 0) return Bound();
    if (zero_) return zero();
    Bound r = *this;
    for (auto& [b, ex] : r.factors_) ex *= e;
    if (r.num_ != 1) { r.factors_erase_merge(r.num_, e); r.num_ = 1; }
    if (r.den_ != 1) { r.factors_erase_merge(r.den_, -e); r.den_ = 1; }
    r.reduce();
    return r;
  }

  bool integral() const {
    if (zero_) return true;
    if (den_ != 1) return false;
    for (const auto& [b, e] : factors_)
      if (e < 0) return false;
    return true;
  }

  // Exact three-way comparison: -1, 0, +1.
  int compare(const Bound& o) const {
    if (zero_ && o.zero_) return 0;
    if (zero_) return -1;
    if (o.zero_) return 1;

    // Ratio this/other as a signed prime-exponent map.
    std::map<Int, Int> ratio = prime_map();
    for (const auto& [b, e] : o.prime_map()) {
      Int& cur = ratio[b];
      cur -= e;
      if (cur == 0) ratio.erase(b);
    }
    if (ratio.empty()) return 0;

    // Certified log10 bracketing of log(ratio).
    for (mpfr_prec_t prec = 128; prec <= (mpfr_prec_t(1) << 22); prec *= 4) {
      auto [lo, hi] = log10_interval(ratio, prec);
      if (mpfr_sgn(lo.get()) > 0) return 1;
      if (mpfr_sgn(hi.get()) < 0) return -1;
      bool lo_zero = mpfr_zero_p(lo.get()), hi_zero = mpfr_zero_p(hi.get());
      if (lo_zero && hi_zero) return 0;  // cannot happen for nonempty prime map
    }

    // Exact fallback: split the ratio into numerator and denominator products.
    Int pnum = 1, pden = 1;
    for (const auto& [b, e] : ratio) {
      if (e > 0) pnum *= int_pow(b, e);
      else pden *= int_pow(b, -e);
    }
    return cmp(pnum, pden) < 0 ? -1 : (pnum == pden ? 0 : 1);
  }

  bool operator==(const Bound& o) const { return compare(o) == 0; }
  bool operator<=(const Bound& o) const { return compare(o) <= 0; }
  bool operator<(const Bound& o) const { return compare(o) < 0; }

  // Certified count of decimal digits of floor(value) (>=1 for value > 0).
  size_t digit_count() const {
    if (zero_) return 1;
    std::map<Int, Int> pm = prime_map();
    // Exact power of ten: digits are the exponent plus one.
    if (pm.size() == 2) {
      auto it2 = pm.find(2), it5 = pm.find(5);
      if (it2 != pm.end() && it5 != pm.end() && it2->second == it5->second &&
          it2->second > 0 && it2->second.fits_ulong_p())
        return size_t(it2->second.get_ui()) + 1;
    }
    if (pm.empty()) return 1;  // value 1
    for (mpfr_prec_t prec = 128; prec <= (mpfr_prec_t(1) << 22); prec *= 4) {
      auto [lo, hi] = log10_interval(pm, prec);
      Int flo = floor_of(lo), fhi = floor_of(hi);
      if (flo == fhi && flo >= 0 && flo.fits_ulong_p())
        return size_t(flo.get_ui()) + 1;
      if (fhi < 0) return 1;  // value in (0,1): floor is 0
    }
    throw BoundError("digit count did not converge");
  }

  // Exact value when it fits in the digit budget.
  Materialized materialize(size_t digit_budget) const {
    Materialized m;
    if (zero_) { m.ok = true; m.value = 0; m.digits = 1; return m; }
    m.digits = digit_count();
    if (m.digits > digit_budget) return m;  // refusal
    Int vnum = num_, vden = den_;
    for (const auto& [b, e] : factors_) {
      if (e > 0) vnum *= int_pow(b, e);
      else vden *= int_pow(b, -e);
    }
    if (vden == 1) {
      m.value = vnum;
    } else {
      m.value = ceil_div(vnum, vden);
      m.ceiled = (vnum % vden != 0);
    }
    m.ok = true;
    m.digits = decimal_digits(m.value);
    return m;
  }

  // Symbolic rendering, e.g. "10^880 * 198^88 * 3".
  std::string str() const {
    if (zero_) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [b, e] : factors_) {
      if (e < 0) continue;
      if (!first) os << " * ";
      first = false;
      os << b.get_str();
      if (e != 1) os << "^" << e.get_str();
    }
    if (num_ != 1 || first) {
      if (!first) os << " * ";
      os << num_.get_str();
      first = false;
    }
    bool anyden = (den_ != 1);
    for (const auto& [b, e] : factors_)
      if (e < 0) anyden = true;
    if (anyden) {
      os << " / (";
      bool f2 = true;
      for (const auto& [b, e] : factors_) {
        if (e >= 0) continue;
        if (!f2) os << " * ";
        f2 = false;
        os << b.get_str();
        Int pe = -e;
        if (pe != 1) os << "^" << pe.get_str();
      }
      if (den_ != 1) {
        if (!f2) os << " * ";
        os << den_.get_str();
      }
      os << ")";
    }
    return os.str();
  }

 private:
  std::map<Int, Int> factors_;
  Int num_ = 1, den_ = 1;
  bool zero_ = false;

  void reduce() {
    Int g = gcd(num_, den_);
    if (g != 1) { num_ /= g; den_ /= g; }
  }

  void factors_erase_merge(const Int& base, const Int& e) {
    if (base == 1) return;
    Int& cur = factors_[base];
    cur += e;
    if (cur == 0) factors_.erase(base);
  }

  // Trial-division prime split of v (v >= 1) into primes below the cutoff;
  // the unfactored remainder is kept as an opaque base.
  static void split_into(std::map<Int, Int>& out, Int v, const Int& mult) {
    if (v == 1) return;
    if (decimal_digits(v) <= 64) {
      for (Int p = 2; p * p <= v && p < 1000000; p = (p == 2 ? Int(3) : p + 2)) {
        while (v % p == 0) {
          out[p] += mult;
          if (out[p] == 0) out.erase(p);
          v /= p;
        }
      }
    }
    if (v != 1) {
      out[v] += mult;
      if (out[v] == 0) out.erase(v);
    }
  }

  std::map<Int, Int> prime_map() const {
    std::map<Int, Int> pm;
    for (const auto& [b, e] : factors_) {
      std::map<Int, Int> bf;
      split_into(bf, b, 1);
      for (const auto& [p, k] : bf) {
        pm[p] += k * e;
        if (pm[p] == 0) pm.erase(p);
      }
    }
    split_into(pm, num_, 1);
    split_into(pm, den_, -1);
    return pm;
  }

  static Int floor_of(const MpfrReal& x) {
    MpfrReal f(mpfr_get_prec(x.get()));
    mpfr_floor(f.get(), x.get());
    Int z;
    mpfr_get_z(z.get_mpz_t(), f.get(), MPFR_RNDD);
    return z;
  }

  // Directed-rounding interval for sum of e*log10(b) over the map.
  static std::pair<MpfrReal, MpfrReal> log10_interval(
      const std::map<Int, Int>& pm, mpfr_prec_t prec) {
    MpfrReal lo(prec), hi(prec);
    MpfrReal t_lo(prec), t_hi(prec), lg_lo(prec), lg_hi(prec), e_lo(prec), e_hi(prec);
    for (const auto& [b, e] : pm) {
      mpfr_set_z(t_lo.get(), b.get_mpz_t(), MPFR_RNDD);
      mpfr_set_z(t_hi.get(), b.get_mpz_t(), MPFR_RNDU);
      mpfr_log10(lg_lo.get(), t_lo.get(), MPFR_RNDD);  // log10 monotone
      mpfr_log10(lg_hi.get(), t_hi.get(), MPFR_RNDU);
      mpfr_set_z(e_lo.get(), e.get_mpz_t(), MPFR_RNDD);
      mpfr_set_z(e_hi.get(), e.get_mpz_t(), MPFR_RNDU);
      // term interval: e * [lg_lo, lg_hi], sign-aware
      MpfrReal term_lo(prec), term_hi(prec);
      if (e >= 0) {
        mpfr_mul(term_lo.get(), e_lo.get(), lg_lo.get(), MPFR_RNDD);
        mpfr_mul(term_hi.get(), e_hi.get(), lg_hi.get(), MPFR_RNDU);
      } else {
        mpfr_mul(term_lo.get(), e_lo.get(), lg_hi.get(), MPFR_RNDD);
        mpfr_mul(term_hi.get(), e_hi.get(), lg_lo.get(), MPFR_RNDU);
      }
      mpfr_add(lo.get(), lo.get(), term_lo.get(), MPFR_RNDD);
      mpfr_add(hi.get(), hi.get(), term_hi.get(), MPFR_RNDU);
    }
    return {lo, hi};
  }
};

}  // namespace gridforge
