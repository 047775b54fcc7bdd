#pragma once

#include <array>
#include <functional>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "nlgf/clspace.hpp"
#include "nlgf/rational.hpp"

namespace nlgf {

/// Question label plus content parts. The first label identifies the question
/// kind (typed vertex, transformation role, ...); packed composites carry
/// their own shape so deciders can unpack them.
struct Question {
    std::vector<int32_t> labels;
    std::vector<BitVec> parts;

    friend bool operator==(const Question& a, const Question& b) {
        return a.labels == b.labels && a.parts == b.parts;
    }
    friend bool operator<(const Question& a, const Question& b) {
        if (a.labels != b.labels) return a.labels < b.labels;
        return a.parts < b.parts;
    }
};

struct Answer {
    std::vector<int32_t> meta;
    std::vector<BitVec> parts;

    friend bool operator==(const Answer& a, const Answer& b) {
        return a.meta == b.meta && a.parts == b.parts;
    }
    friend bool operator!=(const Answer& a, const Answer& b) { return !(a == b); }
    friend bool operator<(const Answer& a, const Answer& b) {
        if (a.meta != b.meta) return a.meta < b.meta;
        return a.parts < b.parts;
    }
};

/// Self-describing concatenation of several questions into one.
Question pack_questions(const std::vector<Question>& qs);
std::vector<Question> unpack_questions(const Question& q);
Answer pack_answers(const std::vector<Answer>& as);
std::vector<Answer> unpack_answers(const Answer& a);

struct WeightedPair {
    Question x, y;
    Rational w;
};

enum class DistKind { Explicit, CL, TypedCL };

/// One-round two-prover game: a question-pair distribution, per-question
/// answer alphabets, and a total decider.
struct Game {
    std::string name;
    std::vector<int64_t> params;

    DistKind kind = DistKind::Explicit;
    std::vector<WeightedPair> table;          // Explicit
    std::shared_ptr<const CLDist> cl;         // CL
    std::shared_ptr<const TypedCLDist> typed; // TypedCL
    std::shared_ptr<const Detyped> detyped;   // set by the detyping transform
    FieldPtr field;                           // CL/typed games
    int field_m = 0;

    std::function<std::vector<Answer>(const Question&)> answers;
    std::function<bool(const Question&, const Question&, const Answer&, const Answer&)> decide;
    bool synchronous = false;

    std::shared_ptr<const Game> inner; // transformation source
    int repeat_r = 1;

    /// Exact question-pair law. Throws CapacityError above the cap.
    std::vector<WeightedPair> pairs() const;
    std::pair<Question, Question> sample(Rng& rng) const;

    /// Marginal law of one side (0 = first prover).
    std::vector<std::pair<Question, Rational>> marginal(int side) const;
};

using GamePtr = std::shared_ptr<const Game>;

/// Enumeration caps; NLGF_CAPACITY scales the seed-space bit cap.
int capacity_seed_bits();
int64_t capacity_table_entries();

/// Question for a plain CL game output.
Question cl_question(const BitVec& x);
/// Question for a typed game output.
Question typed_question(int vertex, const BitVec& x);

/// Callable description of a family of CL-sampled games, indexed by n.
struct VerifierDesc {
    std::function<std::array<int, 3>(int)> parameter;               // n -> (k, m, p)
    std::function<std::vector<BitVec>(int, const BitVec&)> divide;  // register split of s
    std::function<BitVec(int, int, int, const BitVec&, const BitVec&)> func;
    // (n, prover, level, prefix, x) -> level-map output
    std::function<bool(int, const Question&, const Question&, const Answer&, const Answer&)>
        decide;
    int answer_bits = 1;

    /// Materializes game n, checking that the callables describe a valid
    /// CL distribution (registers partition the space, levels stay inside
    /// their register).
    Game game_at(int n) const;
};

} // namespace nlgf
