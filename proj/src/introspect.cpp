#include "nlgf/games.hpp"

namespace nlgf {

namespace intro {

int hide_vertex(int i, int prover, int k) { return pb::Count + 2 + prover * (k + 3) + i; }
int read_vertex(int prover, int k) { return pb::Count + 2 + prover * (k + 3) + k; }
int sample_vertex(int prover, int k) { return pb::Count + 2 + prover * (k + 3) + k + 1; }
int intro_vertex(int prover, int k) { return pb::Count + 2 + prover * (k + 3) + k + 2; }
int vertex_count(int k) { return pb::Count + 2 + 2 * (k + 3); }

} // namespace intro

namespace {

struct IntroInfo {
    GamePtr inner;     // the CL game being introspected
    GamePtr pbg;       // basis test on cap qubits
    int cap = 0;       // EPR pairs
    int k = 0;         // inner level count
    int pm = 0;        // inner ambient bits
    std::vector<std::vector<int>> regs;
    std::vector<int> below, upto, above; // per level: index unions

    const CLFunction& fn(int prover) const {
        return prover == 0 ? inner->cl->la : inner->cl->lb;
    }

    std::vector<int> idx_below(int i) const { // V_{<i}
        std::vector<int> out;
        for (int j = 0; j < i; ++j) out.insert(out.end(), regs[size_t(j)].begin(), regs[size_t(j)].end());
        return out;
    }
    std::vector<int> idx_above(int i) const { // V_{>i}
        std::vector<int> out;
        for (int j = i + 1; j < k; ++j)
            out.insert(out.end(), regs[size_t(j)].begin(), regs[size_t(j)].end());
        return out;
    }

    BitVec restrict_to(const BitVec& v, const std::vector<int>& idx) const {
        BitVec out(pm);
        for (int i : idx) out.set(i, v.get(i));
        return out;
    }

    BitMatrix ambient_level(int prover, int j, const BitVec& prefix) const {
        BitMatrix local = fn(prover).level_map(j, prefix);
        const auto& reg = regs[size_t(j)];
        BitMatrix out(pm, pm);
        for (size_t r = 0; r < reg.size(); ++r)
            for (size_t c = 0; c < reg.size(); ++c)
                if (local.get(int(r), int(c))) out.set(reg[r], reg[c], true);
        return out;
    }

    /// X-side processing of the level-j register: the projection onto
    /// (ker^perp)^C of the level map selected by the line prefix.
    BitVec perp_component(int prover, int j, const BitVec& line_prefix, const BitVec& v) const {
        BitMatrix m = ambient_level(prover, j, line_prefix);
        Subspace vj = Subspace::span_canonical(pm, regs[size_t(j)]);
        return proj_perp(m, vj).apply(restrict_to(v, regs[size_t(j)]));
    }
};

std::vector<BitVec> supported_patterns(int pm, const std::vector<int>& idx) {
    std::vector<BitVec> out;
    if (idx.size() > 20) throw CapacityError("introspection: register too large");
    for (uint64_t w = 0; w < (uint64_t{1} << idx.size()); ++w) {
        BitVec v(pm);
        for (size_t i = 0; i < idx.size(); ++i) v.set(idx[i], (w >> i) & 1);
        out.push_back(v);
    }
    return out;
}

std::vector<Answer> intro_answers(const IntroInfo& info, const Question& q) {
    int v = q.labels[0];
    int k = info.k;
    if (v < pb::Count) return info.pbg->answers(q);
    if (v == intro::GenPauliX || v == intro::GenPauliZ) {
        std::vector<Answer> out;
        for (const BitVec& s : supported_patterns(info.pm, info.idx_below(k)))
            out.push_back(Answer{{}, {s}});
        return out;
    }
    for (int prover = 0; prover < 2; ++prover) {
        if (v == intro::intro_vertex(prover, k)) {
            std::vector<Answer> out;
            for (const BitVec& s : supported_patterns(info.pm, info.idx_below(k))) {
                BitVec x = info.fn(prover).eval(s);
                // image values only, deduplicated
                bool seen = false;
                for (auto& prev : out)
                    if (unpack_answers(prev)[0].parts[0] == x) seen = true;
                if (seen) continue;
                for (const auto& a : info.inner->answers(cl_question(x)))
                    out.push_back(pack_answers({Answer{{}, {x}}, a}));
            }
            return out;
        }
        if (v == intro::sample_vertex(prover, k)) {
            std::vector<Answer> out;
            for (const BitVec& s : supported_patterns(info.pm, info.idx_below(k)))
                for (const auto& a : info.inner->answers(cl_question(info.fn(prover).eval(s))))
                    out.push_back(pack_answers({Answer{{}, {s}}, a}));
            return out;
        }
        if (v == intro::read_vertex(prover, k)) {
            std::vector<Answer> out;
            for (const BitVec& tperp : supported_patterns(info.pm, info.idx_below(k)))
                for (const BitVec& tline : supported_patterns(info.pm, info.idx_below(k)))
                    for (const auto& a : info.inner->answers(cl_question(tline)))
                        out.push_back(pack_answers({Answer{{}, {tperp, tline}}, a}));
            return out;
        }
        for (int i = 0; i < k; ++i) {
            if (v == intro::hide_vertex(i, prover, k)) {
                std::vector<Answer> out;
                for (const BitVec& tline : supported_patterns(info.pm, info.idx_below(i)))
                    for (const BitVec& tperp : supported_patterns(info.pm, info.idx_below(i + 1)))
                        for (const BitVec& r : supported_patterns(info.pm, info.idx_above(i)))
                            out.push_back(Answer{{}, {tline, tperp, r}});
                return out;
            }
        }
    }
    throw std::invalid_argument("introspection: unknown vertex");
}

bool intro_decide(const IntroInfo& info, const Question& x, const Question& y, const Answer& a,
                  const Answer& b) {
    int vx = x.labels[0], vy = y.labels[0];
    int k = info.k;
    if (vx == vy) return a == b;
    if (vx < pb::Count && vy < pb::Count) return info.pbg->decide(x, y, a, b);

    auto is_pair = [&](int u, int v) { return (vx == u && vy == v) || (vx == v && vy == u); };
    auto ans_of = [&](int v) -> const Answer& { return vx == v ? a : b; };

    for (int W = 0; W < 2; ++W) {
        int pauli = W ? pb::PauliZ : pb::PauliX;
        int gen = W ? intro::GenPauliZ : intro::GenPauliX;
        if (is_pair(pauli, gen)) {
            const Answer& pa = ans_of(pauli);
            const Answer& ga = ans_of(gen);
            for (int i = 0; i < info.pm; ++i)
                if (pa.parts[0].get(i) != ga.parts[0].get(i)) return false;
            return true;
        }
    }

    for (int prover = 0; prover < 2; ++prover) {
        // hiding chain
        if (is_pair(intro::GenPauliX, intro::hide_vertex(0, prover, k))) {
            BitVec sx = ans_of(intro::GenPauliX).parts[0];
            const Answer& h = ans_of(intro::hide_vertex(0, prover, k));
            BitVec perp = info.perp_component(prover, 0, BitVec(info.pm), sx);
            return h.parts[1] == perp &&
                   h.parts[2] == info.restrict_to(sx, info.idx_above(0));
        }
        for (int i = 0; i + 1 < k; ++i) {
            if (is_pair(intro::hide_vertex(i, prover, k), intro::hide_vertex(i + 1, prover, k))) {
                const Answer& lo = ans_of(intro::hide_vertex(i, prover, k));
                const Answer& hi = ans_of(intro::hide_vertex(i + 1, prover, k));
                const BitVec& tline_hi = hi.parts[0]; // on V_{<i+1}
                if (info.restrict_to(hi.parts[1], info.idx_below(i + 1)) != lo.parts[1])
                    return false;
                if (info.restrict_to(tline_hi, info.idx_below(i)) != lo.parts[0]) return false;
                if (info.restrict_to(lo.parts[2], info.idx_above(i + 1)) != hi.parts[2])
                    return false;
                BitVec perp = info.perp_component(prover, i + 1, tline_hi, lo.parts[2]);
                return info.restrict_to(hi.parts[1], info.regs[size_t(i + 1)]) == perp;
            }
        }
        if (is_pair(intro::hide_vertex(k - 1, prover, k), intro::read_vertex(prover, k))) {
            const Answer& h = ans_of(intro::hide_vertex(k - 1, prover, k));
            auto rparts = unpack_answers(ans_of(intro::read_vertex(prover, k)));
            const BitVec& rperp = rparts[0].parts[0];
            const BitVec& rline = rparts[0].parts[1];
            return rperp == h.parts[1] &&
                   info.restrict_to(rline, info.idx_below(k - 1)) == h.parts[0];
        }
        if (is_pair(intro::read_vertex(prover, k), intro::intro_vertex(prover, k))) {
            auto rparts = unpack_answers(ans_of(intro::read_vertex(prover, k)));
            auto iparts = unpack_answers(ans_of(intro::intro_vertex(prover, k)));
            return rparts[0].parts[1] == iparts[0].parts[0] && rparts[1] == iparts[1];
        }
        // sampling chain
        if (is_pair(intro::GenPauliZ, intro::sample_vertex(prover, k))) {
            auto sparts = unpack_answers(ans_of(intro::sample_vertex(prover, k)));
            return ans_of(intro::GenPauliZ).parts[0] == sparts[0].parts[0];
        }
        if (is_pair(intro::sample_vertex(prover, k), intro::intro_vertex(prover, k))) {
            auto sparts = unpack_answers(ans_of(intro::sample_vertex(prover, k)));
            auto iparts = unpack_answers(ans_of(intro::intro_vertex(prover, k)));
            return info.fn(prover).eval(sparts[0].parts[0]) == iparts[0].parts[0] &&
                   sparts[1] == iparts[1];
        }
    }
    if (is_pair(intro::intro_vertex(0, k), intro::intro_vertex(1, k))) {
        auto pa = unpack_answers(ans_of(intro::intro_vertex(0, k)));
        auto pb2 = unpack_answers(ans_of(intro::intro_vertex(1, k)));
        return info.inner->decide(cl_question(pa[0].parts[0]), cl_question(pb2[0].parts[0]),
                                  pa[1], pb2[1]);
    }
    return false;
}

} // namespace

Game introspection_game(const GamePtr& g, int cap, int k) {
    if (g->kind != DistKind::CL)
        throw std::invalid_argument("introspection: input must be CL-sampled");
    if (g->cl->la.levels() != k)
        throw std::invalid_argument("introspection: level count mismatch");
    int pm = g->cl->ambient();
    if (pm > cap) throw std::invalid_argument("introspection: cap below the seed width");

    auto info = std::make_shared<IntroInfo>();
    info->inner = g;
    info->pbg = std::make_shared<Game>(pauli_basis_game(cap));
    info->cap = cap;
    info->k = k;
    info->pm = pm;
    info->regs = g->cl->la.registers();

    Game out;
    out.name = "introspection";
    out.params = {cap, k};
    out.kind = DistKind::TypedCL;
    out.field = g->field;
    out.synchronous = true;
    out.inner = g;

    auto typed = std::make_shared<TypedCLDist>();
    typed->t = intro::vertex_count(k);
    typed->edges = info->pbg->typed->edges;
    typed->funcs = info->pbg->typed->funcs;
    int pbamb = info->pbg->typed->ambient();
    std::vector<std::vector<int>> pbregs = info->pbg->typed->funcs[0].registers();
    for (int v = pb::Count; v < typed->t; ++v)
        typed->funcs.push_back(CLFunction::diagonal(pbamb, pbregs, false));
    typed->edges.push_back({pb::PauliX, intro::GenPauliX});
    typed->edges.push_back({pb::PauliZ, intro::GenPauliZ});
    for (int prover = 0; prover < 2; ++prover) {
        typed->edges.push_back({intro::GenPauliX, intro::hide_vertex(0, prover, k)});
        for (int i = 0; i + 1 < k; ++i)
            typed->edges.push_back(
                {intro::hide_vertex(i, prover, k), intro::hide_vertex(i + 1, prover, k)});
        typed->edges.push_back({intro::hide_vertex(k - 1, prover, k), intro::read_vertex(prover, k)});
        typed->edges.push_back({intro::read_vertex(prover, k), intro::intro_vertex(prover, k)});
        typed->edges.push_back({intro::GenPauliZ, intro::sample_vertex(prover, k)});
        typed->edges.push_back({intro::sample_vertex(prover, k), intro::intro_vertex(prover, k)});
    }
    typed->edges.push_back({intro::intro_vertex(0, k), intro::intro_vertex(1, k)});
    for (int v = pb::Count; v < typed->t; ++v) typed->edges.push_back({v, v});
    typed->validate();
    out.typed = typed;
    out.field_m = info->pbg->field_m;

    out.answers = [info](const Question& q) { return intro_answers(*info, q); };
    out.decide = [info](const Question& x, const Question& y, const Answer& a, const Answer& b) {
        return intro_decide(*info, x, y, a, b);
    };
    return out;
}

} // namespace nlgf
