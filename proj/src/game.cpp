#include "nlgf/game.hpp"

#include <cstdlib>

namespace nlgf {

Question pack_questions(const std::vector<Question>& qs) {
    Question out;
    out.labels.push_back(int32_t(qs.size()));
    for (const auto& q : qs) {
        out.labels.push_back(int32_t(q.labels.size()));
        out.labels.push_back(int32_t(q.parts.size()));
    }
    for (const auto& q : qs) {
        out.labels.insert(out.labels.end(), q.labels.begin(), q.labels.end());
        out.parts.insert(out.parts.end(), q.parts.begin(), q.parts.end());
    }
    return out;
}

std::vector<Question> unpack_questions(const Question& q) {
    size_t k = size_t(q.labels.at(0));
    std::vector<Question> out(k);
    size_t li = 1 + 2 * k, pi = 0;
    for (size_t i = 0; i < k; ++i) {
        size_t nl = size_t(q.labels.at(1 + 2 * i));
        size_t np = size_t(q.labels.at(2 + 2 * i));
        out[i].labels.assign(q.labels.begin() + li, q.labels.begin() + li + nl);
        out[i].parts.assign(q.parts.begin() + pi, q.parts.begin() + pi + np);
        li += nl;
        pi += np;
    }
    return out;
}

Answer pack_answers(const std::vector<Answer>& as) {
    Answer out;
    out.meta.push_back(int32_t(as.size()));
    for (const auto& a : as) {
        out.meta.push_back(int32_t(a.meta.size()));
        out.meta.push_back(int32_t(a.parts.size()));
    }
    for (const auto& a : as) {
        out.meta.insert(out.meta.end(), a.meta.begin(), a.meta.end());
        out.parts.insert(out.parts.end(), a.parts.begin(), a.parts.end());
    }
    return out;
}

std::vector<Answer> unpack_answers(const Answer& a) {
    size_t k = size_t(a.meta.at(0));
    std::vector<Answer> out(k);
    size_t mi = 1 + 2 * k, pi = 0;
    for (size_t i = 0; i < k; ++i) {
        size_t nm = size_t(a.meta.at(1 + 2 * i));
        size_t np = size_t(a.meta.at(2 + 2 * i));
        out[i].meta.assign(a.meta.begin() + mi, a.meta.begin() + mi + nm);
        out[i].parts.assign(a.parts.begin() + pi, a.parts.begin() + pi + np);
        mi += nm;
        pi += np;
    }
    return out;
}

int capacity_seed_bits() {
    if (const char* env = std::getenv("NLGF_CAPACITY")) {
        long v = std::atol(env);
        if (v > 0) return int(v);
    }
    return 20;
}

int64_t capacity_table_entries() { return int64_t{1} << 22; }

Question cl_question(const BitVec& x) { return Question{{0}, {x}}; }

Question typed_question(int vertex, const BitVec& x) { return Question{{vertex}, {x}}; }

std::vector<WeightedPair> Game::pairs() const {
    switch (kind) {
        case DistKind::Explicit:
            return table;
        case DistKind::CL: {
            auto counts = enumerate_cl(*cl, capacity_seed_bits());
            int64_t denom = int64_t{1} << cl->ambient();
            std::vector<WeightedPair> out;
            out.reserve(counts.size());
            for (auto& [k, c] : counts)
                out.push_back({cl_question(k.first), cl_question(k.second), Rational(c, denom)});
            return out;
        }
        case DistKind::TypedCL: {
            int64_t denom = 0;
            auto counts = enumerate_typed(*typed, &denom, capacity_seed_bits());
            std::vector<WeightedPair> out;
            out.reserve(counts.size());
            for (auto& [k, c] : counts)
                out.push_back({typed_question(k.first.first, k.first.second),
                               typed_question(k.second.first, k.second.second),
                               Rational(c, denom)});
            return out;
        }
    }
    throw std::logic_error("game: bad dist kind");
}

std::pair<Question, Question> Game::sample(Rng& rng) const {
    switch (kind) {
        case DistKind::Explicit: {
            double u = rng.next_double();
            double acc = 0;
            for (const auto& wp : table) {
                acc += wp.w.to_double();
                if (u < acc) return {wp.x, wp.y};
            }
            return {table.back().x, table.back().y};
        }
        case DistKind::CL: {
            CLSample s = sample_cl(*cl, rng);
            return {cl_question(s.x), cl_question(s.y)};
        }
        case DistKind::TypedCL: {
            TypedSample s = sample_typed(*typed, rng);
            return {typed_question(s.va, s.xa), typed_question(s.vb, s.xb)};
        }
    }
    throw std::logic_error("game: bad dist kind");
}

std::vector<std::pair<Question, Rational>> Game::marginal(int side) const {
    std::map<Question, Rational> m;
    for (const auto& wp : pairs()) {
        const Question& q = side == 0 ? wp.x : wp.y;
        auto it = m.find(q);
        if (it == m.end())
            m.emplace(q, wp.w);
        else
            it->second = it->second + wp.w;
    }
    return {m.begin(), m.end()};
}

Game VerifierDesc::game_at(int n) const {
    auto [k, m, p] = parameter(n);
    auto F = FieldCtx::build(p);
    int ambient = p * m;

    // recover the registers by splitting unit vectors
    std::vector<std::vector<int>> regs(static_cast<size_t>(k));
    for (int i = 0; i < ambient; ++i) {
        BitVec e(ambient);
        e.set(i, true);
        auto split = divide(n, e);
        if (int(split.size()) != k) throw std::invalid_argument("verifier: bad divide arity");
        int owner = -1;
        for (int j = 0; j < k; ++j) {
            if (!split[size_t(j)].is_zero()) {
                if (owner >= 0 || split[size_t(j)] != e)
                    throw std::invalid_argument("verifier: divide is not a register split");
                owner = j;
            }
        }
        if (owner < 0) throw std::invalid_argument("verifier: divide loses coordinates");
        regs[size_t(owner)].push_back(i);
    }
    for (auto& r : regs)
        if (r.empty()) throw std::invalid_argument("verifier: empty register");

    auto build_fn = [&](int prover) {
        auto fn = func;
        auto rg = regs;
        int amb = ambient;
        // level 0 matrix
        BitMatrix l0(int(regs[0].size()), int(regs[0].size()));
        for (size_t c = 0; c < regs[0].size(); ++c) {
            BitVec e(ambient);
            e.set(regs[0][c], true);
            BitVec img = func(n, prover, 0, BitVec(ambient), e);
            for (size_t r = 0; r < regs[0].size(); ++r) l0.set(int(r), int(c), img.get(regs[0][r]));
            BitVec outside = img;
            for (int i : regs[0]) outside.set(i, false);
            if (!outside.is_zero())
                throw std::invalid_argument("verifier: level map leaves its register");
        }
        CLFunction f(ambient, regs, l0);
        for (int j = 1; j < k; ++j) {
            f.add_level(
                [fn, rg, amb, n, prover, j](const BitVec& prefix) {
                    const auto& reg = rg[size_t(j)];
                    BitMatrix mj(int(reg.size()), int(reg.size()));
                    for (size_t c = 0; c < reg.size(); ++c) {
                        BitVec e(amb);
                        e.set(reg[c], true);
                        BitVec img = fn(n, prover, j, prefix, e);
                        for (size_t r = 0; r < reg.size(); ++r)
                            mj.set(int(r), int(c), img.get(reg[r]));
                    }
                    return mj;
                },
                "verifier.level");
        }
        return f;
    };

    Game g;
    g.name = "verifier";
    g.params = {n};
    g.kind = DistKind::CL;
    g.cl = std::make_shared<CLDist>(build_fn(0), build_fn(1));
    g.field = F;
    g.field_m = m;
    int bits = answer_bits;
    g.answers = [bits](const Question&) {
        std::vector<Answer> out;
        for (uint64_t w = 0; w < (uint64_t{1} << bits); ++w)
            out.push_back(Answer{{}, {BitVec::from_u64(bits, w)}});
        return out;
    };
    auto dec = decide;
    g.decide = [dec, n](const Question& x, const Question& y, const Answer& a, const Answer& b) {
        return dec(n, x, y, a, b);
    };
    return g;
}

} // namespace nlgf
