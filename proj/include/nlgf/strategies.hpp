#pragma once

#include "nlgf/games.hpp"
#include "nlgf/quantum.hpp"

namespace nlgf {

/// The two-EPR-pair strategy for the grid game; perfect and commuting on all
/// supported pairs.
Strategy magic_square_strategy();

/// Observables for the grid built from an anticommuting involution pair
/// (xt, zt); cell (r, c), row-major. Rows and the first two columns multiply
/// to +I, the last column to -I.
Cmat magic_grid_cell(const Cmat& xt, const Cmat& zt, int cell);

/// Perfect strategy for the n-qubit basis test on n+1 EPR pairs per side.
Strategy pauli_basis_strategy(int n);

/// Deterministic one-dimensional strategies that evaluate shared polynomials.
Strategy sldt_classical_strategy(const Game& g, const std::vector<IdPoly>& fs);
inline Strategy ldt_classical_strategy(const Game& g, const IdPoly& f) {
    return sldt_classical_strategy(g, {f});
}

/// Honest strategy for the introspection protocol built on a perfect
/// oracularizable strategy for the inner game. Total dimension per side is
/// 2^(cap+1) * dim(inner); capped at 2^10.
Strategy introspection_honest_strategy(const Game& intro_game, const Strategy& inner_perfect);

enum class Transform { Oracularize, Anchor, Repeat, Detype };

/// Lifts a perfect oracularizable strategy through a transformation so that
/// it stays perfect; inputs are checked.
Strategy lift_strategy(const Game& transformed, const Strategy& s);

/// Deterministic strategy from answer functions (dimension one).
Strategy deterministic_strategy(const Game& g,
                                const std::function<Answer(const Question&)>& fa,
                                const std::function<Answer(const Question&)>& fb);

} // namespace nlgf
