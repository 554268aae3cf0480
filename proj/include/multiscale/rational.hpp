#pragma once

#include <gmpxx.h>

#include <string>

#include "multiscale/errors.hpp"

namespace ms {

using Rat = mpq_class;

// Parses "p" or "p/q" (q != 0) into a canonical rational.
Rat rat_from_string(const std::string &s);

// Always "p/q" with q >= 1 and gcd(p,q) = 1, e.g. "3/1", "-1/2".
std::string rat_to_string(const Rat &r);

// A point of P^1(Q): a finite rational or the single point at infinity
// (no sign; -inf and +inf are identified).
class ExtendedValue {
  public:
    static ExtendedValue infinity() { return ExtendedValue(true, 0); }
    static ExtendedValue finite(const Rat &v) { return ExtendedValue(false, v); }

    bool is_infinity() const { return inf_; }
    const Rat &value() const {
        if (inf_)
            throw defect_error("value() on infinite ExtendedValue");
        return val_;
    }

    ExtendedValue negated() const { return inf_ ? *this : finite(Rat(-val_)); }

    bool operator==(const ExtendedValue &o) const {
        return inf_ == o.inf_ && (inf_ || val_ == o.val_);
    }
    bool operator!=(const ExtendedValue &o) const { return !(*this == o); }

    // "p/q" or "inf"
    std::string str() const { return inf_ ? "inf" : rat_to_string(val_); }

  private:
    ExtendedValue(bool inf, const Rat &v) : inf_(inf), val_(v) { val_.canonicalize(); }
    bool inf_;
    Rat val_;
};

} // namespace ms
