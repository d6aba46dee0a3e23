#pragma once

// Thin RAII helpers around GMP/MPFR used by the bound arithmetic.

#include <gmpxx.h>
#include <mpfr.h>

#include <stdexcept>
#include <string>
#include <utility>

namespace gridforge {

using Int = mpz_class;
using Rat = mpq_class;

inline Int int_pow(const Int& base, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

inline Int int_pow(const Int& base, const Int& e) {
  if (!e.fits_ulong_p())
    throw std::overflow_error("exponent too large to materialize");
  return int_pow(base, e.get_ui());
}

// Number of decimal digits of |v|; digits(0) == 1.
inline size_t decimal_digits(const Int& v) {
  if (v == 0) return 1;
  return mpz_sizeinbase(v.get_mpz_t(), 10);
}

inline Int ceil_div(const Int& a, const Int& b) {
  Int q;
  mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

// A floating interval with outward-directed rounding.
class MpfrReal {
 public:
  explicit MpfrReal(mpfr_prec_t prec) { mpfr_init2(x_, prec); mpfr_set_zero(x_, 1); }
  MpfrReal(const MpfrReal& o) { mpfr_init2(x_, mpfr_get_prec(o.x_)); mpfr_set(x_, o.x_, MPFR_RNDN); }
  MpfrReal& operator=(const MpfrReal& o) {
    if (this != &o) { mpfr_set_prec(x_, mpfr_get_prec(o.x_)); mpfr_set(x_, o.x_, MPFR_RNDN); }
    return *this;
  }
  ~MpfrReal() { mpfr_clear(x_); }

  mpfr_ptr get() { return x_; }
  mpfr_srcptr get() const { return x_; }

  // Exact rational value of the current float (mpfr floats are dyadic rationals).
  Rat to_rational() const {
    if (mpfr_zero_p(x_)) return Rat(0);
    mpz_class m;
    mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), x_);
    Rat r(m);
    if (e >= 0) {
      mpz_class p = 1; mpz_mul_2exp(p.get_mpz_t(), p.get_mpz_t(), e);
      r *= Rat(p);
    } else {
      mpz_class p = 1; mpz_mul_2exp(p.get_mpz_t(), p.get_mpz_t(), -e);
      r /= Rat(p);
    }
    return r;
  }

 private:
  mpfr_t x_;
};

}  // namespace gridforge
