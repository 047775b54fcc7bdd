#pragma once

#include "nlgf/game.hpp"
#include "nlgf/polylab.hpp"

namespace nlgf {

/// Single-question game won by answering 0; value 1.
Game accept_game();
/// Two-question game whose best strategies win exactly the diagonal mass 1/3.
Game reject_game();

/// Random explicit synchronous-free game for value-identity tests.
Game random_explicit_game(int nx, int na, Rng& rng);

/// Constraint/variable game on the three-by-three grid; rows and the first
/// two columns multiply to +1, the last column to -1.
Game magic_square_game();
int magic_square_constraint_var(int constraint, int slot); // variable index
bool magic_square_parity_ok(int constraint, const BitVec& bits);

/// Code space used for the coordinate questions of the Pauli basis test:
/// generators of a fixed [n, max(1, floor(log2 n)), d] code of maximal
/// distance, lexicographically first.
std::vector<BitVec> pauli_basis_code(int n);
BitVec pauli_basis_encode(const std::vector<BitVec>& gens, const BitVec& seed);

// vertex ids of the Pauli basis test graph
namespace pb {
inline constexpr int Constraint0 = 0; // .. 5
inline constexpr int Variable0 = 6;   // .. 14
inline constexpr int CoordX = 15;
inline constexpr int CoordZ = 16;
inline constexpr int PauliX = 17;
inline constexpr int PauliZ = 18;
inline constexpr int Comm = 19;
inline constexpr int CommX = 20;
inline constexpr int CommZ = 21;
inline constexpr int Count = 22;
} // namespace pb

/// The n-qubit basis test as a typed-CL game; forces all-X / all-Z
/// measurements on n shared EPR pairs.
Game pauli_basis_game(int n);

// vertex ids of the low-degree test graph
namespace ldt {
inline constexpr int Point = 0;
inline constexpr int AxisLine = 1; // degree <= d univariate answers
inline constexpr int DiagLine = 2; // degree <= d*m univariate answers
} // namespace ldt

/// Simultaneous low-individual-degree test on k polynomials (typed-CL).
Game sim_lowdeg_game(int p, int m, int d, int k);
inline Game qlowdeg_game(int p, int m, int d) { return sim_lowdeg_game(p, m, d, 1); }

// vertex ids of the introspection graph: the 22 basis-test vertices first
namespace intro {
inline constexpr int GenPauliX = pb::Count;
inline constexpr int GenPauliZ = pb::Count + 1;
/// Hide_i for prover P in {0,1}: hide_vertex(i, P)
int hide_vertex(int i, int prover, int k);
int read_vertex(int prover, int k);
int sample_vertex(int prover, int k);
int intro_vertex(int prover, int k);
int vertex_count(int k);
} // namespace intro

/// Question-reduction protocol for a CL-sampled game: the provers sample
/// their own questions with Pauli measurements on cap shared EPR pairs.
/// cap must be at least m*p of the inner game's distribution.
Game introspection_game(const GamePtr& g, int cap, int k);

/// A 1-level game whose distribution hands the same uniform seed to both
/// provers; decider asks for equal one-bit answers.
Game cl_identity_game(int m);

// --- transformations ---------------------------------------------------------

/// One prover answers for both; cross-checked against single-question provers.
Game oracularize(const GamePtr& g);
/// Adds the absorbing question with one quarter weight per branch.
Game anchor(const GamePtr& g);
/// r independent copies, win iff all copies win.
Game repeat_game(const GamePtr& g, int r);
/// Replaces a typed distribution by its simulating plain CL distribution.
Game detype_game(const GamePtr& g);

// labels used by transformed questions
inline constexpr int32_t kAnchorLabel = -1;
inline constexpr int32_t kRoleProverA = 0;
inline constexpr int32_t kRoleProverB = 1;
inline constexpr int32_t kRoleOra = 2;

/// The distinguished answer of lifted strategies on unparseable questions.
Answer star_answer();
Answer anchor_answer();

} // namespace nlgf
