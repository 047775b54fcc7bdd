#pragma once

#include <optional>

#include "nlgf/quantum.hpp"
#include "nlgf/strategies.hpp"

namespace nlgf {

/// Result of an exact or heuristic optimization; the witness always
/// re-evaluates to the reported value.
struct SolveReport {
    Rational value_exact;
    double value = 0.0;
    bool exact = false;
    bool converged = false;
    int64_t work = 0;
    // deterministic witness (exact classical search)
    std::vector<std::pair<Question, Answer>> witness_a, witness_b;
    // quantum witness (heuristic search)
    std::shared_ptr<Strategy> witness_strategy;
};

/// Exact optimum over pairs of deterministic answer functions, by full
/// enumeration of one prover with per-question best response on the other.
/// Answers that never win anything are removed first; a symmetric pass runs
/// first on synchronous games.
SolveReport classical_value_exact(const Game& g);

/// Deterministic strategy evaluation for a witness.
double witness_value(const Game& g, const SolveReport& r);

struct LowerBoundOptions {
    int dim = 2;
    int iters = 6;     // coordinate sweeps per restart
    int restarts = 20;
    uint64_t seed = 0;
    int threads = 0;
};

/// Random-restart hill climbing over rotation-parameterized projective
/// strategies; reproducible for a fixed seed, monotone within a restart.
SolveReport quantum_lower_bound(const Game& g, const LowerBoundOptions& opt);

struct ChainStage {
    std::string op;
    double value = 0.0;
    int dim = 0;
    bool pass = false;
};

struct ChainReport {
    std::vector<ChainStage> stages;
    bool pass = false;
};

/// Applies each transformation in turn, lifting the strategy and requiring
/// value 1 within tol at every stage. Transform names: "oracularize",
/// "anchor", "repeat:<r>", "detype".
ChainReport verify_completeness_chain(const GamePtr& g, const Strategy& s,
                                      const std::vector<std::string>& transforms,
                                      double tol = 1e-9);

} // namespace nlgf
