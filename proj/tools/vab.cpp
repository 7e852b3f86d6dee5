// Batch front end: parse an algebroid definition file, run the axiom checkers,
// build degree truncations, and run the identity-verification suites. One job
// per invocation; reports are deterministic for a fixed job.
//
// Exit codes: 0 pass, 1 violations, 2 input error, 3 window exhaustion,
// 4 internal-consistency failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <sstream>

#include "vab/field.hpp"
#include "vab/io.hpp"
#include "vab/twisted.hpp"

using nlohmann::json;
using namespace vab;

namespace {

struct Section {
    std::string name;
    CheckReport rep;
};

struct Report {
    std::string command;
    std::string input;
    std::vector<Section> sections;
    std::vector<std::pair<std::string, std::string>> data; // ordered key/value lines
    std::vector<std::string> warnings;

    bool pass() const {
        for (const auto& s : sections)
            if (!s.rep.pass()) return false;
        return true;
    }
};

void emit_text(const Report& r, std::ostream& os) {
    os << "== " << r.command << " " << r.input << " ==\n";
    for (const auto& w : r.warnings) os << "warning: " << w << "\n";
    for (const auto& [k, v] : r.data) os << k << ": " << v << "\n";
    for (const auto& s : r.sections) {
        os << s.name << ": " << (s.rep.pass() ? "pass" : "FAIL") << " (" << s.rep.checked << " checks)\n";
        for (const auto& v : s.rep.violations) os << "  violation: " << v.str() << "\n";
        for (const auto& n : s.rep.notes) os << "  note: " << n << "\n";
    }
    os << "overall: " << (r.pass() ? "PASS" : "FAIL") << "\n";
}

void emit_json(const Report& r, std::ostream& os) {
    json out;
    out["command"] = r.command;
    out["input"] = r.input;
    out["pass"] = r.pass();
    out["warnings"] = r.warnings;
    json data = json::object();
    for (const auto& [k, v] : r.data) data[k] = v;
    out["data"] = data;
    json secs = json::array();
    for (const auto& s : r.sections) {
        json js;
        js["name"] = s.name;
        js["pass"] = s.rep.pass();
        js["checked"] = s.rep.checked;
        js["notes"] = s.rep.notes;
        json viols = json::array();
        for (const auto& v : s.rep.violations) {
            json jv;
            jv["family"] = v.family;
            jv["where"] = v.where;
            jv["lhs"] = v.lhs;
            jv["rhs"] = v.rhs;
            viols.push_back(jv);
        }
        js["violations"] = viols;
        secs.push_back(js);
    }
    out["sections"] = secs;
    os << out.dump(2) << "\n";
}

std::string dims_str(const std::vector<int>& d) {
    std::ostringstream os;
    for (size_t i = 0; i < d.size(); ++i) {
        if (i) os << " ";
        os << d[i];
    }
    return os.str();
}

std::vector<int> subspace_dims(const std::vector<Subspace>& s) {
    std::vector<int> out;
    out.reserve(s.size());
    for (const auto& x : s) out.push_back(x.dim());
    return out;
}

struct Job {
    std::string input;
    int max_degree = 3;
    int fiber = 0;
    long grid = 2;
    std::string w_degree = "3/2";
    int fun_degree = 3;
    long sample = 200000;
    unsigned seed = 0;
    std::string format = "text";
    bool dump_basis = false;
};

/// Checks shared by every command; violations exit 1 before heavy builds.
void common_checks(const InputBundle& in, Report& rep) {
    rep.sections.push_back({"comm-algebra", check_comm_algebra(in.algebroid.A)});
    rep.sections.push_back({"vertex-algebroid", check_vertex_algebroid(in.algebroid)});
    rep.sections.push_back({"tca", check_tca(tca_of_algebroid(in.algebroid))});
    rep.sections.push_back({"sector-grading", check_sector_grading(in.algebroid, in.grading)});
    QuotientLieAlgebroid q = lie_algebroid_quotient(in.algebroid);
    rep.sections.push_back({"lie-quotient", q.well_defined});
    rep.sections.push_back({"lie-algebroid", check_lie_algebroid(q.g)});
}

struct TwistSetup {
    FixedSubalgebroid fx;
    QuotientLieAlgebroid q0; // quotient of B^0
    FiberBuild fiber;
    CheckReport module_check;
    CheckReport conditions;
    TwistedFiber tf;
};

TwistSetup setup_fiber(const InputBundle& in, int fiber_index) {
    if (fiber_index < 0 || fiber_index >= static_cast<int>(in.fibers.size()))
        throw input_error("fiber index " + std::to_string(fiber_index) + " out of range (file has " +
                          std::to_string(in.fibers.size()) + ")");
    TwistSetup s;
    s.fx = fixed_subalgebroid(in.algebroid, in.grading);
    s.q0 = lie_algebroid_quotient(s.fx.B0);
    s.fiber = fiber_from_spec(s.fx, s.q0, in.grading, in.fibers[static_cast<size_t>(fiber_index)]);
    s.module_check = check_lie_algebroid_module(s.q0.g, s.fiber.U);
    s.tf = make_fiber(s.fx, s.q0, s.fiber.U, in.algebroid.A.dim, in.algebroid.dimB);
    s.conditions = check_fiber_conditions(in.algebroid, in.grading, s.tf);
    return s;
}

int finish(const Report& rep, const Job& job) {
    if (job.format == "json")
        emit_json(rep, std::cout);
    else
        emit_text(rep, std::cout);
    return rep.pass() ? 0 : 1;
}

int run_check(const Job& job) {
    InputBundle in = parse_input_file(job.input);
    Report rep;
    rep.command = "check";
    rep.input = job.input;
    rep.warnings = in.warnings;
    common_checks(in, rep);
    for (size_t i = 0; i < in.fibers.size(); ++i) {
        TwistSetup s = setup_fiber(in, static_cast<int>(i));
        std::string tag = "fiber[" + std::to_string(i) + "]";
        rep.sections.push_back({tag + "-spec", s.fiber.checks});
        rep.sections.push_back({tag + "-module", s.module_check});
        rep.sections.push_back({tag + "-conditions", s.conditions});
    }
    return finish(rep, job);
}

int run_build(const Job& job) {
    InputBundle in = parse_input_file(job.input);
    if (in.algebroid.A.dim == 0) throw input_error("the construction needs a unital A (dim A >= 1)");
    Report rep;
    rep.command = "build";
    rep.input = job.input;
    rep.warnings = in.warnings;
    common_checks(in, rep);
    if (!rep.pass()) return finish(rep, job);

    const int n = job.max_degree;
    auto L = std::make_shared<const LoopLie>(tca_of_algebroid(in.algebroid),
                                             trivial_grading(in.algebroid.A.dim, in.algebroid.dimB), n);
    InducedModule vl = InducedModule::vacuum_algebra(L, in.algebroid.A.dim + 2);
    InducedModule vb = build_vb(vl, in.algebroid);
    rep.data.emplace_back("V_B dims (degree 0.." + std::to_string(n) + ")", dims_str(vb.dims()));
    rep.sections.push_back({"pbw-spanning", verify_spanning(vb)});
    rep.sections.push_back({"level-one", verify_level_one(vb, in.algebroid.A.unit)});
    if (job.dump_basis) {
        for (int k = 0; k <= vb.grid(); ++k) {
            std::ostringstream os;
            for (int pos = 0; pos < vb.dim(k); ++pos) {
                if (pos) os << ", ";
                os << vb.mono_str(k, vb.complement(k)[static_cast<size_t>(pos)]);
            }
            rep.data.emplace_back("basis[" + std::to_string(k) + "]", os.str());
        }
    }
    return finish(rep, job);
}

int run_twist(const Job& job) {
    InputBundle in = parse_input_file(job.input);
    if (in.algebroid.A.dim == 0) throw input_error("the construction needs a unital A (dim A >= 1)");
    Report rep;
    rep.command = "twist";
    rep.input = job.input;
    rep.warnings = in.warnings;
    common_checks(in, rep);
    if (!rep.pass()) return finish(rep, job);

    TwistSetup s = setup_fiber(in, job.fiber);
    rep.sections.push_back({"fiber-spec", s.fiber.checks});
    rep.sections.push_back({"fiber-module", s.module_check});
    rep.sections.push_back({"fiber-conditions", s.conditions});
    bool fiber_passed = s.fiber.checks.pass() && s.module_check.pass() && s.conditions.pass();

    const int n = job.max_degree;
    const int T = in.grading.T;
    Tca c = tca_of_algebroid(in.algebroid);
    auto Lt = std::make_shared<const LoopLie>(c, in.grading, n);
    InducedModule mg = induce_twisted(Lt, s.tf);

    // untwisted side for the ideal generators E
    auto Lu = std::make_shared<const LoopLie>(c, trivial_grading(in.algebroid.A.dim, in.algebroid.dimB),
                                              std::max(2, std::min(n, 3)));
    InducedModule vl = InducedModule::vacuum_algebra(Lu, in.algebroid.A.dim + 2);
    FieldEngine vl_to_mg(&vl, &mg);
    std::vector<State> e_gens = ideal_generators(vl, in.algebroid);
    RelationsW w = relations_W(vl_to_mg, e_gens);
    rep.sections.push_back({"relations-degree-0", w.degree0});
    if (fiber_passed && !w.degree0.pass())
        throw consistency_error("W_g(U)(0) != 0 although the fiber conditions hold");

    MBResult mb = build_MB(mg, w.spans, fiber_passed);
    rep.sections.push_back({"M_B", mb.report});
    rep.sections.push_back({"level-one", verify_level_one(mb.mb, in.algebroid.A.unit)});
    RadicalResult rad = radical_J(mb.mb);
    rep.sections.push_back({"radical", rad.verification});
    rep.sections.push_back({"graded-simplicity(L_g)", is_simple_graded(rad.lg)});

    rep.data.emplace_back("T", std::to_string(T));
    rep.data.emplace_back("M_g dims (degrees k/T, k=0.." + std::to_string(mg.grid()) + ")", dims_str(mg.dims()));
    rep.data.emplace_back("M_B dims", dims_str(mb.mb.dims()));
    rep.data.emplace_back("J dims", dims_str(subspace_dims(rad.j_slices)));
    rep.data.emplace_back("L_g dims", dims_str(rad.lg.dims()));
    return finish(rep, job);
}

int run_verify(const Job& job) {
    InputBundle in = parse_input_file(job.input);
    if (in.algebroid.A.dim == 0) throw input_error("the construction needs a unital A (dim A >= 1)");
    Report rep;
    rep.command = "verify";
    rep.input = job.input;
    rep.warnings = in.warnings;
    common_checks(in, rep);
    if (!rep.pass()) return finish(rep, job);

    const int T = in.grading.T;
    Rational w_max = Rational::parse(job.w_degree);
    long wceil = w_max.floor_long() + 1;
    const int n_alg =
        std::max({job.max_degree, static_cast<int>(wceil + 3 * job.grid + 2), job.fun_degree + 3});
    const int n_mod = std::max(job.max_degree, static_cast<int>(wceil + 3 * (job.grid + 1)));
    Tca c = tca_of_algebroid(in.algebroid);
    const int nA = in.algebroid.A.dim, nB = in.algebroid.dimB;

    auto Lu = std::make_shared<const LoopLie>(c, trivial_grading(nA, nB), n_alg);
    rep.sections.push_back({"loop-lie-axioms", Lu->verify_lie_axioms()});
    rep.sections.push_back({"locality", Lu->verify_locality()});

    InducedModule vl = InducedModule::vacuum_algebra(Lu, nA + 2);
    InducedModule vb = build_vb(vl, in.algebroid);
    FieldEngine self(&vb, &vb);

    // untwisted Jacobi grids over all generator pairs
    CheckReport jac;
    jac.subject = "jacobi-grid";
    for (int gu = 0; gu < nA + nB; ++gu)
        for (int gv = 0; gv < nA + nB; ++gv) {
            State u = vb.generator_state(gu >= nA, gu >= nA ? gu - nA : gu);
            State v = vb.generator_state(gv >= nA, gv >= nA ? gv - nA : gv);
            jac.merge(verify_jacobi_grid(self, self, u, v, job.grid, w_max, job.sample, job.seed));
        }
    rep.sections.push_back({"jacobi-grid", jac});
    rep.sections.push_back({"derivative-rule", verify_derivative_rule(self)});
    rep.sections.push_back({"restricted", verify_restricted(self)});
    rep.sections.push_back({"level-one", verify_level_one(vb, in.algebroid.A.unit)});

    // twisted side
    if (!in.fibers.empty()) {
        TwistSetup s = setup_fiber(in, job.fiber);
        bool fiber_passed = s.fiber.checks.pass() && s.module_check.pass() && s.conditions.pass();
        auto Lt = std::make_shared<const LoopLie>(c, in.grading, n_mod);
        rep.sections.push_back({"twisted-loop-lie-axioms", Lt->verify_lie_axioms()});
        rep.sections.push_back({"twisted-locality", Lt->verify_locality()});
        InducedModule mg = induce_twisted(Lt, s.tf);
        FieldEngine vl_to_mg(&vl, &mg);
        RelationsW w = relations_W(vl_to_mg, ideal_generators(vl, in.algebroid));
        MBResult mbr = build_MB(mg, w.spans, fiber_passed);
        FieldEngine to_mod(&vb, &mbr.mb);
        CheckReport tjac;
        tjac.subject = "twisted-jacobi-grid";
        for (int gu = 0; gu < nA + nB; ++gu)
            for (int gv = 0; gv < nA + nB; ++gv) {
                State u = vb.generator_state(gu >= nA, gu >= nA ? gu - nA : gu);
                State v = vb.generator_state(gv >= nA, gv >= nA ? gv - nA : gv);
                tjac.merge(verify_jacobi_grid(self, to_mod, u, v, job.grid, w_max, job.sample, job.seed));
            }
        rep.sections.push_back({"twisted-jacobi-grid", tjac});
        rep.sections.push_back({"commutator-transfer", verify_commutator_transfer(to_mod, w_max)});
        rep.sections.push_back({"twisted-derivative-rule", verify_derivative_rule(to_mod)});
        rep.sections.push_back({"twisted-restricted", verify_restricted(to_mod)});
        rep.sections.push_back({"twisted-level-one", verify_level_one(mbr.mb, in.algebroid.A.unit)});
    } else {
        CheckReport note;
        note.subject = "twisted";
        note.notes.push_back("no fibers in the input; twisted suites skipped (vacuous pass)");
        rep.sections.push_back({"twisted", note});
    }

    // automorphism functoriality for the diagonal sector map (rational iff T <= 2)
    if (T <= 2) {
        GradedEndomorphism f = diagonal_endomorphism(in.algebroid, in.grading);
        EndoReport er = check_algebroid_endomorphism(in.algebroid, f);
        rep.sections.push_back({"diagonal-endomorphism", er.checks});
        ExtendedAutomorphism fe = extend_automorphism(vb, f);
        rep.sections.push_back({"automorphism-descent", fe.descent});
        rep.sections.push_back(
            {"functoriality", verify_functoriality(self, fe, Rational(job.fun_degree), Rational(job.fun_degree))});
    } else {
        CheckReport note;
        note.subject = "functoriality";
        note.notes.push_back("T > 2: the diagonal sector map is not rational; section skipped (vacuous pass)");
        rep.sections.push_back({"functoriality", note});
    }
    return finish(rep, job);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact-arithmetic engine for N-graded vertex algebras from vertex algebroids"};
    app.require_subcommand(1);

    Job job;
    auto add_common = [&](CLI::App* cmd, bool with_degree) {
        cmd->add_option("--input", job.input, "definition file (JSON)")->required();
        if (with_degree) cmd->add_option("--max-degree", job.max_degree, "degree cutoff (integer D; degrees <= D in (1/T)N)");
        cmd->add_option("--format", job.format, "text|json")->check(CLI::IsMember({"text", "json"}));
    };
    CLI::App* c_check = app.add_subcommand("check", "run the axiom checkers");
    add_common(c_check, false);
    CLI::App* c_build = app.add_subcommand("build", "build the V_B truncation and report graded dimensions");
    add_common(c_build, true);
    c_build->add_flag("--dump-basis", job.dump_basis, "print the chosen basis monomials per degree");
    CLI::App* c_twist = app.add_subcommand("twist", "build twisted modules M_B(U) and L_g(U)");
    add_common(c_twist, true);
    c_twist->add_option("--fiber", job.fiber, "fiber index (default 0)");
    CLI::App* c_verify = app.add_subcommand("verify", "run the identity-verification suites");
    add_common(c_verify, true);
    c_verify->add_option("--fiber", job.fiber, "fiber index (default 0)");
    c_verify->add_option("--grid", job.grid, "offset bound for the Jacobi grids (default 2)");
    c_verify->add_option("--w-degree", job.w_degree, "max degree of the swept module vectors (rational, default 3/2)");
    c_verify->add_option("--fun-degree", job.fun_degree, "max degree for the functoriality sweep (default 3)");
    c_verify->add_option("--sample", job.sample, "sample grids larger than this many tuples (0 = always exhaustive)");
    c_verify->add_option("--seed", job.seed, "seed for sampled sweeps");

    try {
        CLI11_PARSE(app, argc, argv);
        if (c_check->parsed()) return run_check(job);
        if (c_build->parsed()) return run_build(job);
        if (c_twist->parsed()) return run_twist(job);
        if (c_verify->parsed()) return run_verify(job);
        return 2;
    } catch (const input_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const window_error& e) {
        std::cerr << "window exhausted: " << e.what() << "\n";
        return 3;
    } catch (const consistency_error& e) {
        std::cerr << "internal consistency failure: " << e.what() << "\n";
        return 4;
    }
}
