#pragma once
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "cutblock/errors.hpp"

namespace cutblock {

// Field element, encoded as an integer 0..q-1.  For q = p^e the base-p digits
// of the encoding are the coefficients (ascending degree) of the residue
// polynomial in GF(p)[x]/(m).
using Elt = std::uint16_t;

inline constexpr unsigned kMaxFieldOrder = 1024;

// GF(q) with table-based arithmetic.  The modulus m for e >= 2 comes from a
// fixed table of Conway polynomials, so encodings and subfield embeddings are
// canonical and stable across runs.  Immutable; share via FieldPtr.
class Field {
 public:
  unsigned q() const { return q_; }
  unsigned p() const { return p_; }
  unsigned e() const { return e_; }
  // modulus coefficients, ascending degree, monic of degree e
  const std::vector<Elt>& modulus() const { return modulus_; }

  Elt add(Elt a, Elt b) const { return add_[std::size_t(a) * q_ + b]; }
  Elt neg(Elt a) const { return neg_[a]; }
  Elt sub(Elt a, Elt b) const { return add_[std::size_t(a) * q_ + neg_[b]]; }
  Elt mul(Elt a, Elt b) const { return mul_[std::size_t(a) * q_ + b]; }
  Elt inv(Elt a) const {
    if (a == 0) throw DivisionByZero("division by zero in GF(" + std::to_string(q_) + ")");
    return inv_[a];
  }
  Elt div(Elt a, Elt b) const { return mul(a, inv(b)); }
  Elt pow(Elt a, long long n) const;

  // Discrete log base the canonical generator: the class of x for e >= 2
  // (primitive by choice of modulus), the smallest primitive root for e = 1.
  unsigned log(Elt a) const {
    if (a == 0) throw DivisionByZero("discrete log of zero");
    return log_[a];
  }
  Elt gen_pow(std::uint64_t i) const { return exp_[i % (q_ - 1)]; }
  Elt generator() const { return gen_pow(1); }  // 1 in GF(2), where the group is trivial

  // raw row pointers for inner loops
  const Elt* add_row(Elt a) const { return add_.data() + std::size_t(a) * q_; }
  const Elt* mul_row(Elt a) const { return mul_.data() + std::size_t(a) * q_; }

 private:
  explicit Field(unsigned q);
  friend std::shared_ptr<const Field> make_field(unsigned q);

  unsigned q_, p_, e_;
  std::vector<Elt> modulus_;
  std::vector<Elt> add_, mul_, neg_, inv_, exp_;
  std::vector<unsigned> log_;
};

using FieldPtr = std::shared_ptr<const Field>;

// Cached factory.  Throws NotPrimePower for q that is not a prime power
// (including 0 and 1) and FieldTooLarge for q > 1024.
FieldPtr make_field(unsigned q);

// Canonical embedding GF(p^e) -> GF(p^E) for e | E.  Zero maps to zero; a
// nonzero element with log i maps to the element with log i*(P^E-1)/(p^e-1).
// Compatibility of the Conway moduli makes this a field homomorphism; prime
// subfield encodings are preserved verbatim.  Throws NotSubfield otherwise.
Elt embed_subfield(const Field& from, const Field& to, Elt a);

}  // namespace cutblock
