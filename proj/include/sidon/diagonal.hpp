#pragma once

// The diagonal {(x, x) : x in k^*} inside k^* x k, and its image as a set of
// residues modulo q(q-1) when k is a prime field.

#include "sidon/field.hpp"
#include "sidon/sidon.hpp"

#include <cstdint>
#include <vector>

namespace sidon::diagonal {

/// Element of k^* x k, written multiplicatively in the first factor and
/// additively in the second.
struct ProductGroupElem {
    FieldElem mult_part; // nonzero
    FieldElem add_part;

    friend bool operator==(const ProductGroupElem&, const ProductGroupElem&) = default;
};

/// Group law (x1, y1)(x2, y2) = (x1 x2, y1 + y2); identity (1, 0).
GroupAdapter<ProductGroupElem> product_group(const FieldCtx& ctx);

struct DiagonalSet {
    GroupAdapter<ProductGroupElem> group;
    std::vector<ProductGroupElem> elements;
};

/// (x, x) for every nonzero x in enumeration order; q - 1 elements in a group of order q(q-1).
DiagonalSet build_diagonal(const FieldCtx& ctx);

/// x1 x2 = x3 x4 and x1 + x2 = x3 + x4 force x1 in {x3, x4}, since x1 and x2
/// are then the roots of (X - x3)(X - x4). Returns whether the implication holds.
/// Throws InvalidElement on a zero argument.
bool proof_identity_check(const FieldCtx& ctx, const FieldElem& x1, const FieldElem& x2, const FieldElem& x3,
                          const FieldElem& x4);

/// Maps (x, y) to the n mod q(q-1) with n = dlog_g(x) mod q-1 and n = y mod q,
/// g the smallest primitive root. Sorted ascending. Prime fields only.
std::vector<std::uint64_t> to_cyclic_integers(const FieldCtx& ctx, const std::vector<ProductGroupElem>& set);

} // namespace sidon::diagonal
