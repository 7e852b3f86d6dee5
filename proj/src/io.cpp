#include "vab/io.hpp"

#include <fstream>
#include <map>
#include <set>

#include <json.hpp>

namespace vab {

namespace {

using nlohmann::json;

[[noreturn]] void fail_at(const std::string& path, const std::string& what) {
    throw input_error(path + ": " + what);
}

void require_keys(const json& j, const std::string& path, const std::set<std::string>& allowed) {
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.count(it.key())) fail_at(path, "unknown field '" + it.key() + "'");
}

Rational parse_coeff(const json& j, const std::string& path, std::vector<std::string>& warnings) {
    if (j.is_number_integer()) return Rational(j.get<long>());
    if (!j.is_string()) fail_at(path, "coefficient must be a string \"p/q\" or an integer");
    bool unreduced = false;
    Rational r = Rational::parse(j.get<std::string>(), &unreduced);
    if (unreduced) warnings.push_back(path + ": rational '" + j.get<std::string>() + "' was not reduced; normalized");
    return r;
}

int resolve_index(const json& j, const std::string& path, const std::map<std::string, int>& by_label, int dim,
                  const std::string& side) {
    if (j.is_number_integer()) {
        long v = j.get<long>();
        if (v < 0 || v >= dim) fail_at(path, "index " + std::to_string(v) + " out of range for " + side);
        return static_cast<int>(v);
    }
    if (!j.is_string()) fail_at(path, "expected a label or an index");
    auto it = by_label.find(j.get<std::string>());
    if (it == by_label.end()) fail_at(path, "unknown " + side + " label '" + j.get<std::string>() + "'");
    return it->second;
}

std::vector<std::string> parse_basis(const json& j, const std::string& path) {
    if (!j.is_array()) fail_at(path, "basis must be an array of labels");
    std::vector<std::string> out;
    std::set<std::string> seen;
    for (const auto& e : j) {
        if (!e.is_string()) fail_at(path, "labels must be strings");
        std::string s = e.get<std::string>();
        if (!seen.insert(s).second) fail_at(path, "duplicate label '" + s + "'");
        out.push_back(s);
    }
    return out;
}

} // namespace

InputBundle parse_input_text(const std::string& text, const std::string& origin) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw input_error(origin + ": " + e.what());
    }
    if (!root.is_object()) fail_at(origin, "top level must be an object");
    require_keys(root, origin, {"T", "A", "B", "sectors", "fibers"});

    InputBundle out;
    int T = 1;
    if (root.contains("T")) {
        if (!root["T"].is_number_integer() || root["T"].get<long>() < 1) fail_at(origin + ".T", "T must be a positive integer");
        T = static_cast<int>(root["T"].get<long>());
    }

    if (!root.contains("A")) fail_at(origin, "missing field 'A'");
    const json& ja = root["A"];
    require_keys(ja, origin + ".A", {"basis", "unit", "product"});
    out.labels_a = parse_basis(ja.value("basis", json::array()), origin + ".A.basis");
    const int nA = static_cast<int>(out.labels_a.size());
    std::map<std::string, int> idx_a;
    for (int i = 0; i < nA; ++i) idx_a.emplace(out.labels_a[static_cast<size_t>(i)], i);

    CommAlgebra A;
    A.dim = nA;
    A.mul = make_table(nA, nA, nA);
    A.unit = -1;
    if (nA > 0) {
        if (!ja.contains("unit")) fail_at(origin + ".A", "missing 'unit'");
        A.unit = resolve_index(ja["unit"], origin + ".A.unit", idx_a, nA, "A");
    }
    if (ja.contains("product")) {
        const json& tp = ja["product"];
        if (!tp.is_array()) fail_at(origin + ".A.product", "must be an array of [i,j,k,c] tuples");
        int n = 0;
        for (const auto& e : tp) {
            std::string p = origin + ".A.product[" + std::to_string(n++) + "]";
            if (!e.is_array() || e.size() != 4) fail_at(p, "expected [i,j,k,c]");
            int i = resolve_index(e[0], p, idx_a, nA, "A");
            int j = resolve_index(e[1], p, idx_a, nA, "A");
            int k = resolve_index(e[2], p, idx_a, nA, "A");
            A.mul[static_cast<size_t>(i)][static_cast<size_t>(j)].add(k, parse_coeff(e[3], p, out.warnings));
        }
    }

    json jb = root.value("B", json::object());
    require_keys(jb, origin + ".B", {"basis", "action", "bracket", "pairing", "anchor", "partial"});
    out.labels_b = parse_basis(jb.value("basis", json::array()), origin + ".B.basis");
    const int nB = static_cast<int>(out.labels_b.size());
    std::map<std::string, int> idx_b;
    for (int i = 0; i < nB; ++i) {
        if (idx_a.count(out.labels_b[static_cast<size_t>(i)]))
            fail_at(origin + ".B.basis", "duplicate label '" + out.labels_b[static_cast<size_t>(i)] + "' (already in A)");
        idx_b.emplace(out.labels_b[static_cast<size_t>(i)], i);
    }

    out.algebroid = make_algebroid(A, nB);
    auto fill4 = [&](const char* key, Table& table, const std::map<std::string, int>& li, int ni,
                     const std::map<std::string, int>& lj, int nj, const std::map<std::string, int>& lk, int nk,
                     const char* si, const char* sj, const char* sk) {
        if (!jb.contains(key)) return;
        const json& t = jb[key];
        std::string base = origin + ".B." + key;
        if (!t.is_array()) fail_at(base, "must be an array of [i,j,k,c] tuples");
        int n = 0;
        for (const auto& e : t) {
            std::string p = base + "[" + std::to_string(n++) + "]";
            if (!e.is_array() || e.size() != 4) fail_at(p, "expected [i,j,k,c]");
            int i = resolve_index(e[0], p, li, ni, si);
            int j = resolve_index(e[1], p, lj, nj, sj);
            int k = resolve_index(e[2], p, lk, nk, sk);
            table[static_cast<size_t>(i)][static_cast<size_t>(j)].add(k, parse_coeff(e[3], p, out.warnings));
        }
    };
    fill4("action", out.algebroid.action, idx_a, nA, idx_b, nB, idx_b, nB, "A", "B", "B");
    fill4("bracket", out.algebroid.bracket, idx_b, nB, idx_b, nB, idx_b, nB, "B", "B", "B");
    fill4("pairing", out.algebroid.pairing, idx_b, nB, idx_b, nB, idx_a, nA, "B", "B", "A");
    if (jb.contains("anchor")) {
        const json& t = jb["anchor"];
        std::string base = origin + ".B.anchor";
        if (!t.is_array()) fail_at(base, "must be an array of [b,a,a',c] tuples");
        int n = 0;
        for (const auto& e : t) {
            std::string p = base + "[" + std::to_string(n++) + "]";
            if (!e.is_array() || e.size() != 4) fail_at(p, "expected [b,a,a',c]");
            int b = resolve_index(e[0], p, idx_b, nB, "B");
            int a = resolve_index(e[1], p, idx_a, nA, "A");
            int a2 = resolve_index(e[2], p, idx_a, nA, "A");
            out.algebroid.anchor[static_cast<size_t>(b)][static_cast<size_t>(a)].add(a2, parse_coeff(e[3], p, out.warnings));
        }
    }
    if (jb.contains("partial")) {
        const json& t = jb["partial"];
        std::string base = origin + ".B.partial";
        if (!t.is_array()) fail_at(base, "must be an array of [a,b,c] triples");
        int n = 0;
        for (const auto& e : t) {
            std::string p = base + "[" + std::to_string(n++) + "]";
            if (!e.is_array() || e.size() != 3) fail_at(p, "expected [a,b,c]");
            int a = resolve_index(e[0], p, idx_a, nA, "A");
            int b = resolve_index(e[1], p, idx_b, nB, "B");
            out.algebroid.partial[static_cast<size_t>(a)].add(b, parse_coeff(e[2], p, out.warnings));
        }
    }

    out.grading.T = T;
    out.grading.secA.assign(static_cast<size_t>(nA), 0);
    out.grading.secB.assign(static_cast<size_t>(nB), 0);
    if (root.contains("sectors")) {
        const json& js = root["sectors"];
        if (!js.is_object()) fail_at(origin + ".sectors", "must map labels to sectors");
        for (auto it = js.begin(); it != js.end(); ++it) {
            if (!it.value().is_number_integer()) fail_at(origin + ".sectors", "sector of '" + it.key() + "' must be an integer");
            long r = it.value().get<long>();
            if (r < 0 || r >= T) fail_at(origin + ".sectors", "sector of '" + it.key() + "' outside 0..T-1");
            if (idx_a.count(it.key()))
                out.grading.secA[static_cast<size_t>(idx_a[it.key()])] = static_cast<int>(r);
            else if (idx_b.count(it.key()))
                out.grading.secB[static_cast<size_t>(idx_b[it.key()])] = static_cast<int>(r);
            else
                fail_at(origin + ".sectors", "unknown label '" + it.key() + "'");
        }
    }

    if (root.contains("fibers")) {
        const json& jf = root["fibers"];
        if (!jf.is_array()) fail_at(origin + ".fibers", "must be an array");
        int nf = 0;
        for (const auto& e : jf) {
            std::string base = origin + ".fibers[" + std::to_string(nf++) + "]";
            require_keys(e, base, {"dim", "A0_action", "g_action"});
            if (!e.contains("dim") || !e["dim"].is_number_integer() || e["dim"].get<long>() < 0)
                fail_at(base, "missing or invalid 'dim'");
            FiberSpec f;
            f.dim = static_cast<int>(e["dim"].get<long>());
            f.a_act = make_table(nA, f.dim, f.dim);
            f.b_act = make_table(nB, f.dim, f.dim);
            auto fill_fiber = [&](const char* key, Table& table, const std::map<std::string, int>& li, int ni,
                                  const char* side) {
                if (!e.contains(key)) return;
                const json& t = e[key];
                std::string p0 = base + "." + key;
                if (!t.is_array()) fail_at(p0, "must be an array of [x,i,j,c] tuples");
                int n = 0;
                for (const auto& row : t) {
                    std::string p = p0 + "[" + std::to_string(n++) + "]";
                    if (!row.is_array() || row.size() != 4) fail_at(p, "expected [x,i,j,c]");
                    int x = resolve_index(row[0], p, li, ni, side);
                    if (!row[1].is_number_integer() || !row[2].is_number_integer()) fail_at(p, "fiber indices must be integers");
                    long i = row[1].get<long>(), j = row[2].get<long>();
                    if (i < 0 || i >= f.dim || j < 0 || j >= f.dim) fail_at(p, "fiber index out of range");
                    table[static_cast<size_t>(x)][static_cast<size_t>(i)].add(static_cast<int>(j),
                                                                              parse_coeff(row[3], p, out.warnings));
                }
            };
            fill_fiber("A0_action", f.a_act, idx_a, nA, "A");
            fill_fiber("g_action", f.b_act, idx_b, nB, "B");
            out.fibers.push_back(std::move(f));
        }
    }
    return out;
}

InputBundle parse_input_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open input file '" + path + "'");
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_input_text(text, path);
}

} // namespace vab
