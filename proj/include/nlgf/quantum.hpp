#pragma once

#include <Eigen/Dense>
#include <map>
#include <optional>

#include "nlgf/game.hpp"

namespace nlgf {

using Cmat = Eigen::MatrixXcd;
using Cvec = Eigen::VectorXcd;

Cmat kron(const Cmat& a, const Cmat& b);
Cvec kron_vec(const Cvec& a, const Cvec& b);
double op_norm(const Cmat& m);

/// Outcome-indexed measurement operators.
struct Povm {
    std::vector<std::pair<Answer, Cmat>> items;

    const Cmat* find(const Answer& a) const;
    /// PSD within tol, sums to the identity within tol; projective when pvm.
    bool valid(double tol = 1e-9, bool pvm = false) const;
};

/// Finite-dimensional tensor-product strategy. B-side operators are stored as
/// they act on the second factor.
struct Strategy {
    int dim_a = 1, dim_b = 1;
    Cvec state; // dim_a * dim_b, row-major pairing (i,j) -> i*dim_b + j
    std::map<Question, Povm> povm_a, povm_b;

    // tensor factorization for repeated games (value factorizes exactly)
    std::vector<std::shared_ptr<const Strategy>> factors;
    // set by the detyping lift: behave as `inner` on parsed questions, answer
    // star elsewhere
    std::shared_ptr<const Strategy> detype_inner;
    GamePtr detype_game_src; // the typed game the lift came from

    bool valid(double tol = 1e-9) const;
    const Povm& a_for(const Question& q) const;
    const Povm& b_for(const Question& q) const;
};

using StrategyPtr = std::shared_ptr<const Strategy>;

/// <psi| A (x) B |psi>.
double pair_probability(const Strategy& s, const Cmat& a, const Cmat& b);

struct EvalOptions {
    int threads = 0; // 0 = library default
    bool serial = false;
};

/// Success probability of the strategy on the game; exact enumeration of the
/// question-pair law, parallel over pairs with a deterministic reduction.
double eval_value(const Game& g, const Strategy& s, const EvalOptions& opt = {});
/// Reference implementation kept for testing the parallel kernel.
double eval_value_serial(const Game& g, const Strategy& s);

struct CorrelationEntry {
    Question x, y;
    Answer a, b;
    double p;
};
std::vector<CorrelationEntry> correlation(const Game& g, const Strategy& s);

/// Probability mass on unequal answers over the marginal laws.
double delta_sync(const Game& g, const Strategy& s);

/// E_x sum_{a != b} <psi| A^x_a B^x_b |psi> for operators on a shared space.
double dist_consistent(const std::vector<std::pair<double, std::pair<Povm, Povm>>>& weighted,
                       const Cvec& psi);
/// E_x sum_a || (A^x_a - B^x_a) |psi> ||^2.
double dist_close(const std::vector<std::pair<double, std::pair<Povm, Povm>>>& weighted,
                  const Cvec& psi);

/// Largest commutator norm over mu-supported question pairs, with the B-side
/// operators transposed onto the first factor. Requires dim_a == dim_b.
double max_commutator(const Game& g, const Strategy& s);
bool is_oracularizable(const Game& g, const Strategy& s, double tol = 1e-9);

// --- Pauli machinery ----------------------------------------------------------

/// W-basis observable rho^W(a) on C^{2^p}; X shifts by a, Z applies the trace
/// character.
Cmat gen_pauli_obs(char w, const FieldPtr& f, FieldElem a);
/// The eigenprojector family {rho^W_a}.
std::vector<Cmat> gen_pauli_pvm(char w, const FieldPtr& f);

/// Basis change between p qubits under the public coordinates and C^{2^p}.
Cmat u2top(const FieldPtr& f);
/// Block form acting on m field coordinates.
Cmat u2top(const FieldPtr& f, int m);

/// (1/sqrt(n)) sum |ii>.
Cvec me_state(int n);

/// Projector onto computational-basis states whose bits at `idx` equal the
/// bits of `val` at those positions (dimension 2^n).
Cmat z_mask_projector(int n, const std::vector<int>& idx, const BitVec& val);
/// Same in the X basis.
Cmat x_mask_projector(int n, const std::vector<int>& idx, const BitVec& val);

} // namespace nlgf
