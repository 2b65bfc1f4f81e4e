// Typed to untyped conversion: type-check conjunctions over free
// variables, the row-by-row formula transformation, description assembly
// and purely propositional check cleanup.

#ifndef TLDFORGE_TRANSFORM_HPP
#define TLDFORGE_TRANSFORM_HPP

#include "tldforge/ast.hpp"

namespace tldf {

// Faithful is the real transformation. NoNegationCheck drops check_G from
// the negation row; it exists only so tests can show the check matters.
enum class TransformVariant { Faithful, NoNegationCheck };

// T1(X1) /\ ... /\ Tn(Xn) over the free variables of f, `term` omitted.
Formula check_of(const TypingEnv& env, const Formula& f);

Formula transform_formula(const TypingEnv& env, const Formula& f,
                          TransformVariant variant = TransformVariant::Faithful);

// p(X1..Xn) <=> T1(X1) /\ ... /\ Tn(Xn) /\ Def^nt. Not simplified.
LogicDescription transform_tld(
    const TypedLogicDescription& tld,
    TransformVariant variant = TransformVariant::Faithful);

// Drops duplicate conjuncts within one conjunction, True conjuncts and
// False disjuncts. Nothing else is rewritten.
Formula simplify_checks(const Formula& f);

}  // namespace tldf

#endif  // TLDFORGE_TRANSFORM_HPP
