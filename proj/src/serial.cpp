#include "nlgf/serial.hpp"

#include <fstream>
#include <set>

#include "nlgf/games.hpp"
#include "nlgf/solvers.hpp"

namespace nlgf {

namespace {

Json bits_to_json(const BitVec& v) {
    return Json{{"n", v.size()}, {"bits", v.str()}};
}

BitVec bits_from_json(const Json& j) {
    int n = j.at("n").get<int>();
    std::string s = j.at("bits").get<std::string>();
    BitVec v(n);
    for (int i = 0; i < n; ++i) v.set(i, s[size_t(i)] == '1');
    return v;
}

} // namespace

Json question_to_json(const Question& q) {
    Json parts = Json::array();
    for (const auto& p : q.parts) parts.push_back(bits_to_json(p));
    return Json{{"labels", q.labels}, {"parts", parts}};
}

Question question_from_json(const Json& j) {
    Question q;
    q.labels = j.at("labels").get<std::vector<int32_t>>();
    for (const auto& p : j.at("parts")) q.parts.push_back(bits_from_json(p));
    return q;
}

Json answer_to_json(const Answer& a) {
    Json parts = Json::array();
    for (const auto& p : a.parts) parts.push_back(bits_to_json(p));
    return Json{{"meta", a.meta}, {"parts", parts}};
}

Answer answer_from_json(const Json& j) {
    Answer a;
    a.meta = j.at("meta").get<std::vector<int32_t>>();
    for (const auto& p : j.at("parts")) a.parts.push_back(bits_from_json(p));
    return a;
}

Json game_to_json(const Game& g) {
    if (g.name == "oracularize" || g.name == "anchor" || g.name == "repeat" ||
        g.name == "detype") {
        Json j{{"type", "transform"}, {"op", g.name}, {"inner", game_to_json(*g.inner)}};
        if (g.name == "repeat") j["r"] = g.repeat_r;
        return j;
    }
    if (g.name == "introspection")
        return Json{{"type", "introspection"},
                    {"cap", g.params[0]},
                    {"k", g.params[1]},
                    {"inner", game_to_json(*g.inner)}};
    if (g.name == "random" || g.name == "explicit") {
        // full explicit serialization
        std::set<Question> qset;
        for (const auto& wp : g.table) {
            qset.insert(wp.x);
            qset.insert(wp.y);
        }
        std::vector<Question> qs(qset.begin(), qset.end());
        std::map<Question, int> qidx;
        Json jqs = Json::array();
        Json jans = Json::array();
        for (size_t i = 0; i < qs.size(); ++i) {
            qidx[qs[i]] = int(i);
            jqs.push_back(question_to_json(qs[i]));
            Json al = Json::array();
            for (const auto& a : g.answers(qs[i])) al.push_back(answer_to_json(a));
            jans.push_back(al);
        }
        Json tab = Json::array();
        for (const auto& wp : g.table)
            tab.push_back(Json{{"x", qidx.at(wp.x)},
                               {"y", qidx.at(wp.y)},
                               {"num", wp.w.num()},
                               {"den", wp.w.den()}});
        Json dec = Json::array();
        for (const auto& wp : g.table) {
            auto ax = g.answers(wp.x);
            auto by = g.answers(wp.y);
            std::string row;
            for (const auto& a : ax)
                for (const auto& b : by) row.push_back(g.decide(wp.x, wp.y, a, b) ? '1' : '0');
            dec.push_back(row);
        }
        return Json{{"type", "explicit"}, {"synchronous", g.synchronous}, {"questions", jqs},
                    {"answers", jans},   {"table", tab},                  {"decider", dec}};
    }
    return Json{{"type", "library"}, {"name", g.name}, {"params", g.params}};
}

GamePtr game_from_json(const Json& j) {
    std::string type = j.at("type").get<std::string>();
    if (type == "library") {
        std::string name = j.at("name").get<std::string>();
        auto params = j.at("params").get<std::vector<int64_t>>();
        if (name == "accept") return std::make_shared<Game>(accept_game());
        if (name == "reject") return std::make_shared<Game>(reject_game());
        if (name == "magic-square") return std::make_shared<Game>(magic_square_game());
        if (name == "pauli-basis")
            return std::make_shared<Game>(pauli_basis_game(int(params.at(0))));
        if (name == "sim-lowdeg")
            return std::make_shared<Game>(sim_lowdeg_game(int(params.at(0)), int(params.at(1)),
                                                          int(params.at(2)), int(params.at(3))));
        if (name == "cl-identity") return std::make_shared<Game>(cl_identity_game(int(params.at(0))));
        throw std::invalid_argument("game: unknown library name " + name);
    }
    if (type == "transform") {
        GamePtr inner = game_from_json(j.at("inner"));
        std::string op = j.at("op").get<std::string>();
        if (op == "oracularize") return std::make_shared<Game>(oracularize(inner));
        if (op == "anchor") return std::make_shared<Game>(anchor(inner));
        if (op == "repeat")
            return std::make_shared<Game>(repeat_game(inner, j.at("r").get<int>()));
        if (op == "detype") return std::make_shared<Game>(detype_game(inner));
        throw std::invalid_argument("game: unknown transform " + op);
    }
    if (type == "introspection") {
        GamePtr inner = game_from_json(j.at("inner"));
        return std::make_shared<Game>(
            introspection_game(inner, j.at("cap").get<int>(), j.at("k").get<int>()));
    }
    if (type == "explicit") {
        auto g = std::make_shared<Game>();
        g->name = "explicit";
        g->synchronous = j.at("synchronous").get<bool>();
        std::vector<Question> qs;
        for (const auto& q : j.at("questions")) qs.push_back(question_from_json(q));
        auto answers = std::make_shared<std::map<Question, std::vector<Answer>>>();
        for (size_t i = 0; i < qs.size(); ++i) {
            std::vector<Answer> al;
            for (const auto& a : j.at("answers").at(i)) al.push_back(answer_from_json(a));
            (*answers)[qs[i]] = al;
        }
        auto wins = std::make_shared<std::map<std::pair<Question, Question>,
                                              std::map<std::pair<Answer, Answer>, bool>>>();
        size_t row = 0;
        for (const auto& e : j.at("table")) {
            const Question& x = qs.at(e.at("x").get<size_t>());
            const Question& y = qs.at(e.at("y").get<size_t>());
            g->table.push_back(
                {x, y, Rational(e.at("num").get<int64_t>(), e.at("den").get<int64_t>())});
            std::string bits = j.at("decider").at(row++).get<std::string>();
            size_t t = 0;
            for (const auto& a : answers->at(x))
                for (const auto& b : answers->at(y))
                    (*wins)[{x, y}][{a, b}] = bits.at(t++) == '1';
        }
        g->answers = [answers](const Question& q) { return answers->at(q); };
        g->decide = [wins](const Question& x, const Question& y, const Answer& a,
                           const Answer& b) {
            auto it = wins->find({x, y});
            if (it == wins->end()) return false;
            auto jt = it->second.find({a, b});
            return jt != it->second.end() && jt->second;
        };
        return g;
    }
    throw std::invalid_argument("game: unknown document type " + type);
}

std::string game_fingerprint(const Game& g) {
    std::string dump = game_to_json(g).dump();
    uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : dump) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    snprintf(buf, sizeof buf, "%016llx", (unsigned long long)h);
    return buf;
}

Json field_to_json(const FieldCtx& f) {
    Json basis = Json::array();
    for (int i = 0; i < f.p(); ++i) basis.push_back(f.basis(i).hex());
    return Json{{"p", f.p()}, {"irreducible", f.modulus_bits()}, {"basis", basis}};
}

Json clfunction_to_json(const CLFunction& f, int table_limit) {
    Json regs = Json::array();
    for (const auto& r : f.registers()) regs.push_back(r);
    Json lvl0 = Json::array();
    for (int i = 0; i < f.level0().rows(); ++i) lvl0.push_back(f.level0().row(i).str());
    Json levels = Json::array();
    int prefix_bits = 0;
    for (int j = 1; j < f.levels(); ++j) {
        prefix_bits += int(f.registers()[size_t(j - 1)].size());
        Json entry{{"rule", f.rule_name(j)}};
        if (prefix_bits <= 12 && (int64_t{1} << prefix_bits) <= table_limit) {
            Json table = Json::array();
            for (uint64_t w = 0; w < (uint64_t{1} << prefix_bits); ++w) {
                BitVec prefix(f.ambient());
                int pos = 0;
                for (int jj = 0; jj < j; ++jj)
                    for (int idx : f.registers()[size_t(jj)]) prefix.set(idx, (w >> pos++) & 1);
                BitMatrix m = f.level_map(j, prefix);
                Json rows = Json::array();
                for (int r = 0; r < m.rows(); ++r) rows.push_back(m.row(r).str());
                table.push_back(Json{{"prefix", prefix.str()}, {"matrix", rows}});
            }
            entry["table"] = table;
        }
        levels.push_back(entry);
    }
    return Json{{"ambient", f.ambient()}, {"registers", regs}, {"level0", lvl0},
                {"levels", levels}};
}

Json poly_to_json(const IdPoly& f) {
    Json terms = Json::array();
    for (const auto& [e, c] : f.terms()) {
        Json ex = Json::array();
        for (uint16_t x : e) ex.push_back(x);
        terms.push_back(Json{{"exps", ex}, {"coeff", c.hex()}});
    }
    return Json{{"p", f.field()->p()}, {"m", f.vars()}, {"terms", terms}};
}

// --- strategy binary format -----------------------------------------------------

namespace {

void put_u32(std::ostream& os, uint32_t v) {
    unsigned char b[4] = {(unsigned char)(v), (unsigned char)(v >> 8), (unsigned char)(v >> 16),
                          (unsigned char)(v >> 24)};
    os.write((const char*)b, 4);
}
uint32_t get_u32(std::istream& is) {
    unsigned char b[4];
    is.read((char*)b, 4);
    return uint32_t(b[0]) | uint32_t(b[1]) << 8 | uint32_t(b[2]) << 16 | uint32_t(b[3]) << 24;
}
void put_f64(std::ostream& os, double d) {
    static_assert(sizeof(double) == 8);
    os.write((const char*)&d, 8);
}
double get_f64(std::istream& is) {
    double d;
    is.read((char*)&d, 8);
    return d;
}

void put_bits(std::ostream& os, const BitVec& v) {
    put_u32(os, uint32_t(v.size()));
    for (int i = 0; i < v.size(); i += 8) {
        unsigned char byte = 0;
        for (int b = 0; b < 8 && i + b < v.size(); ++b)
            if (v.get(i + b)) byte |= (unsigned char)(1 << b);
        os.write((const char*)&byte, 1);
    }
}
BitVec get_bits(std::istream& is) {
    int n = int(get_u32(is));
    BitVec v(n);
    for (int i = 0; i < n; i += 8) {
        unsigned char byte;
        is.read((char*)&byte, 1);
        for (int b = 0; b < 8 && i + b < n; ++b) v.set(i + b, (byte >> b) & 1);
    }
    return v;
}

void put_question(std::ostream& os, const Question& q) {
    put_u32(os, uint32_t(q.labels.size()));
    for (int32_t l : q.labels) put_u32(os, uint32_t(l));
    put_u32(os, uint32_t(q.parts.size()));
    for (const auto& p : q.parts) put_bits(os, p);
}
Question get_question(std::istream& is) {
    Question q;
    uint32_t nl = get_u32(is);
    for (uint32_t i = 0; i < nl; ++i) q.labels.push_back(int32_t(get_u32(is)));
    uint32_t np = get_u32(is);
    for (uint32_t i = 0; i < np; ++i) q.parts.push_back(get_bits(is));
    return q;
}
void put_answer(std::ostream& os, const Answer& a) {
    put_u32(os, uint32_t(a.meta.size()));
    for (int32_t l : a.meta) put_u32(os, uint32_t(l));
    put_u32(os, uint32_t(a.parts.size()));
    for (const auto& p : a.parts) put_bits(os, p);
}
Answer get_answer(std::istream& is) {
    Answer a;
    uint32_t nm = get_u32(is);
    for (uint32_t i = 0; i < nm; ++i) a.meta.push_back(int32_t(get_u32(is)));
    uint32_t np = get_u32(is);
    for (uint32_t i = 0; i < np; ++i) a.parts.push_back(get_bits(is));
    return a;
}

void put_povms(std::ostream& os, const std::map<Question, Povm>& ps) {
    put_u32(os, uint32_t(ps.size()));
    for (const auto& [q, p] : ps) {
        put_question(os, q);
        put_u32(os, uint32_t(p.items.size()));
        for (const auto& [a, m] : p.items) {
            put_answer(os, a);
            put_u32(os, uint32_t(m.rows()));
            for (Eigen::Index i = 0; i < m.rows(); ++i)
                for (Eigen::Index j = 0; j < m.cols(); ++j) {
                    put_f64(os, m(i, j).real());
                    put_f64(os, m(i, j).imag());
                }
        }
    }
}
std::map<Question, Povm> get_povms(std::istream& is) {
    std::map<Question, Povm> out;
    uint32_t nq = get_u32(is);
    for (uint32_t qi = 0; qi < nq; ++qi) {
        Question q = get_question(is);
        Povm p;
        uint32_t ni = get_u32(is);
        for (uint32_t i = 0; i < ni; ++i) {
            Answer a = get_answer(is);
            uint32_t d = get_u32(is);
            Cmat m(d, d);
            for (uint32_t r = 0; r < d; ++r)
                for (uint32_t c = 0; c < d; ++c) {
                    double re = get_f64(is), im = get_f64(is);
                    m(r, c) = {re, im};
                }
            p.items.push_back({a, m});
        }
        out[q] = p;
    }
    return out;
}

} // namespace

void save_strategy(const Strategy& s, const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("strategy: cannot write " + path);
    os.write("NLGS", 4);
    put_u32(os, 1); // version
    put_u32(os, uint32_t(s.dim_a));
    put_u32(os, uint32_t(s.dim_b));
    for (Eigen::Index i = 0; i < s.state.size(); ++i) {
        put_f64(os, s.state(i).real());
        put_f64(os, s.state(i).imag());
    }
    put_povms(os, s.povm_a);
    put_povms(os, s.povm_b);
}

Strategy load_strategy(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("strategy: cannot read " + path);
    char magic[4];
    is.read(magic, 4);
    if (std::string(magic, 4) != "NLGS") throw std::runtime_error("strategy: bad magic");
    if (get_u32(is) != 1) throw std::runtime_error("strategy: unsupported version");
    Strategy s;
    s.dim_a = int(get_u32(is));
    s.dim_b = int(get_u32(is));
    s.state = Cvec(Eigen::Index(s.dim_a) * s.dim_b);
    for (Eigen::Index i = 0; i < s.state.size(); ++i) {
        double re = get_f64(is), im = get_f64(is);
        s.state(i) = {re, im};
    }
    s.povm_a = get_povms(is);
    s.povm_b = get_povms(is);
    return s;
}

Json report_to_json(const SolveReport& r) {
    Json j{{"value", r.value}, {"exact", r.exact}, {"converged", r.converged}, {"work", r.work}};
    if (r.exact) j["value_rational"] = r.value_exact.str();
    if (!r.witness_a.empty()) {
        Json wa = Json::array(), wb = Json::array();
        for (const auto& [q, a] : r.witness_a)
            wa.push_back(Json{{"question", question_to_json(q)}, {"answer", answer_to_json(a)}});
        for (const auto& [q, a] : r.witness_b)
            wb.push_back(Json{{"question", question_to_json(q)}, {"answer", answer_to_json(a)}});
        j["witness_a"] = wa;
        j["witness_b"] = wb;
    }
    return j;
}

} // namespace nlgf
