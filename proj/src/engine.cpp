#include "vab/engine.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <sstream>

namespace vab {

namespace {

/// Left-to-right PBW position: larger degree first, b-modes before a-modes on
/// ties (a(-1) innermost), then generator index.
bool cr_before(const Mode& x, const Mode& y) {
    Rational dx = x.degree(), dy = y.degree();
    if (dx != dy) return dy < dx;
    if (x.is_b != y.is_b) return x.is_b > y.is_b;
    return x.gen < y.gen;
}

long deg_num_of(const Mode& x, int T) {
    Rational d = x.degree() * Rational(T);
    if (!d.is_integer()) throw consistency_error("mode degree not on the 1/T grid");
    return d.floor_long();
}

} // namespace

int Pbw::a_count() const {
    int n = 0;
    for (const Mode& m : modes)
        if (!m.is_b) ++n;
    return n;
}

bool Pbw::operator<(const Pbw& o) const {
    int ac = a_count(), oc = o.a_count();
    if (ac != oc) return ac > oc; // longer a-words first (pivot preference)
    if (modes != o.modes)
        return std::lexicographical_compare(modes.begin(), modes.end(), o.modes.begin(), o.modes.end());
    return fiber < o.fiber;
}

std::string Pbw::str() const {
    std::ostringstream os;
    for (const Mode& m : modes) os << m.str() << " ";
    os << "|" << fiber << ">";
    return os.str();
}

State add_states(const State& a, const State& b) {
    if (a.zero()) return b;
    if (b.zero()) return a;
    if (a.k != b.k) throw consistency_error("adding states of different degrees");
    State out = a;
    out.v += b.v;
    return out;
}

State scale_state(const Rational& c, State s) {
    s.v *= c;
    return s;
}

InducedModule InducedModule::vacuum_algebra(std::shared_ptr<const LoopLie> L, int cap_a) {
    InducedModule m;
    m.L_ = std::move(L);
    m.flavor_ = Flavor::VacuumAlgebra;
    m.fiber_.dim = 1;
    m.fiber_.vacuum = true;
    m.cap_a_ = cap_a;
    if (m.L_->T() != 1) throw input_error("vacuum algebra requires the untwisted loop algebra");
    for (const Mode& x : m.L_->basis()) {
        if (x.degree().sign() > 0) m.creation_.push_back(x);
        if (!x.is_b && x.exp == Rational(-1)) m.creation_.push_back(x); // a(-1), degree 0
    }
    std::sort(m.creation_.begin(), m.creation_.end(), cr_before);
    m.enumerate_monos();
    return m;
}

InducedModule InducedModule::induced_twisted(std::shared_ptr<const LoopLie> L, Fiber fiber) {
    InducedModule m;
    m.L_ = std::move(L);
    m.flavor_ = Flavor::InducedTwisted;
    m.fiber_ = std::move(fiber);
    m.fiber_.vacuum = false;
    m.cap_a_ = 0;
    for (const Mode& x : m.L_->basis())
        if (x.degree().sign() > 0) m.creation_.push_back(x);
    std::sort(m.creation_.begin(), m.creation_.end(), cr_before);
    m.enumerate_monos();
    return m;
}

void InducedModule::enumerate_monos() {
    slices_.assign(static_cast<size_t>(grid() + 1), Slice{});
    const int T = this->T();
    std::vector<long> dnum;
    dnum.reserve(creation_.size());
    for (const Mode& x : creation_) dnum.push_back(deg_num_of(x, T));

    for (int k = 0; k <= grid(); ++k) {
        Slice& sl = slices_[static_cast<size_t>(k)];
        std::vector<Mode> cur;
        std::function<void(size_t, long, long)> gen = [&](size_t i, long remaining, long a_budget) {
            if (i == creation_.size()) {
                if (remaining == 0)
                    for (int f = 0; f < fiber_.dim; ++f) sl.monos.push_back(Pbw{cur, f});
                return;
            }
            long d = dnum[i];
            long max_c = d > 0 ? remaining / d : a_budget;
            for (long c = 0; c <= max_c; ++c) {
                gen(i + 1, remaining - c * d, a_budget - (d == 0 ? c : 0));
                cur.push_back(creation_[i]);
            }
            cur.resize(cur.size() - static_cast<size_t>(max_c + 1));
        };
        gen(0, k, cap_a_);
        std::sort(sl.monos.begin(), sl.monos.end());
        for (size_t i = 0; i < sl.monos.size(); ++i) sl.index.emplace(sl.monos[i], static_cast<int>(i));
        sl.rel = Subspace(static_cast<int>(sl.monos.size()));
        sl.complement.resize(sl.monos.size());
        for (size_t i = 0; i < sl.monos.size(); ++i) sl.complement[i] = static_cast<int>(i);
    }
}

const std::vector<Pbw>& InducedModule::monos(int k) const {
    if (k < 0 || k > grid()) throw window_error("slice " + std::to_string(k) + " outside window");
    return slices_[static_cast<size_t>(k)].monos;
}

int InducedModule::mono_index(int k, const Pbw& p) const {
    const Slice& sl = slices_[static_cast<size_t>(k)];
    auto it = sl.index.find(p);
    if (it == sl.index.end()) throw consistency_error("monomial not enumerated: " + p.str());
    return it->second;
}

const Subspace& InducedModule::relations(int k) const { return slices_[static_cast<size_t>(k)].rel; }

const std::vector<int>& InducedModule::complement(int k) const { return slices_[static_cast<size_t>(k)].complement; }

std::vector<int> InducedModule::dims() const {
    std::vector<int> out;
    for (int k = 0; k <= grid(); ++k) out.push_back(dim(k));
    return out;
}

bool InducedModule::is_creation(const Mode& m) const {
    if (m.degree().sign() > 0) return true;
    return fiber_.vacuum && !m.is_b && m.exp == Rational(-1);
}

int InducedModule::target_slice(const Mode& x, int k) const { return k + static_cast<int>(deg_num_of(x, T())); }

const SparseVector& InducedModule::act_mono(const Mode& x, int k, int mi) const {
    auto key = std::make_tuple(x, k, mi);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;

    int kt = target_slice(x, k);
    if (kt > grid()) throw window_error("action target degree outside window");
    const Pbw& mono = monos(k)[static_cast<size_t>(mi)];
    SparseVector out(kt >= 0 ? mono_count(kt) : 0);

    if (kt >= 0) {
        if (mono.modes.empty() && !is_creation(x)) {
            if (!fiber_.vacuum && x.degree().is_zero()) {
                const SparseVector& col = x.is_b
                                              ? fiber_.b_act[static_cast<size_t>(x.gen)][static_cast<size_t>(mono.fiber)]
                                              : fiber_.a_act[static_cast<size_t>(x.gen)][static_cast<size_t>(mono.fiber)];
                for (const auto& [u, c] : col.entries()) out.add(mono_index(kt, Pbw{{}, u}), c);
            }
            // vacuum flavors: every non-creation mode annihilates the vacuum
        } else if (is_creation(x) && (mono.modes.empty() || !cr_before(mono.modes.front(), x))) {
            if (!x.is_b && mono.a_count() + 1 > cap_a_) throw window_error("a(-1)-word cap exceeded");
            Pbw nm;
            nm.modes.reserve(mono.modes.size() + 1);
            nm.modes.push_back(x);
            nm.modes.insert(nm.modes.end(), mono.modes.begin(), mono.modes.end());
            nm.fiber = mono.fiber;
            out.set(mono_index(kt, nm), Rational(1));
        } else {
            // x (y rest) = y (x rest) + [x, y] rest
            Mode y = mono.modes.front();
            Pbw rest;
            rest.modes.assign(mono.modes.begin() + 1, mono.modes.end());
            rest.fiber = mono.fiber;
            int kr = k - static_cast<int>(deg_num_of(y, T()));
            int ri = mono_index(kr, rest);
            int kx = target_slice(x, kr);
            if (kx >= 0) {
                SparseVector xr = act_mono(x, kr, ri);
                for (const auto& [j, c] : xr.entries()) out.axpy(c, act_mono(y, kx, j));
            }
            for (const auto& [z, c] : L_->bracket(x, y)) out.axpy(c, act_mono(z, kr, ri));
        }
    }
    auto [pos, inserted] = cache_.emplace(std::move(key), std::move(out));
    (void)inserted;
    return pos->second;
}

SparseVector InducedModule::act_vec(const Mode& x, int k, const SparseVector& v) const {
    int kt = target_slice(x, k);
    if (kt < 0) return SparseVector(0);
    if (kt > grid()) throw window_error("action target degree outside window");
    SparseVector out(mono_count(kt));
    for (const auto& [mi, c] : v.entries()) out.axpy(c, act_mono(x, k, mi));
    return out;
}

State InducedModule::act(const Mode& x, const State& s) const {
    int kt = target_slice(x, s.k);
    if (kt < 0) return zero_state(0);
    return make_state(kt, act_vec(x, s.k, s.v));
}

State InducedModule::act_comb(const ModeComb& c, const State& s) const {
    State out = zero_state(0);
    for (const auto& [x, coeff] : c) out = add_states(out, scale_state(coeff, act(x, s)));
    return out;
}

SparseVector InducedModule::reduce(int k, SparseVector mono_coords) const {
    return slices_[static_cast<size_t>(k)].rel.reduce(std::move(mono_coords));
}

State InducedModule::make_state(int k, SparseVector mono_coords) const {
    return State{k, reduce(k, std::move(mono_coords))};
}

SparseVector InducedModule::quotient_coords(const State& s) const {
    const Slice& sl = slices_[static_cast<size_t>(s.k)];
    SparseVector red = sl.rel.reduce(s.v);
    SparseVector out(static_cast<int>(sl.complement.size()));
    for (size_t i = 0; i < sl.complement.size(); ++i) {
        const Rational& c = red.at(sl.complement[i]);
        if (!c.is_zero()) out.set(static_cast<int>(i), c);
    }
    return out;
}

State InducedModule::state_from_quotient(int k, const SparseVector& q) const {
    const Slice& sl = slices_[static_cast<size_t>(k)];
    SparseVector v(mono_count(k));
    for (const auto& [i, c] : q.entries()) v.set(sl.complement[static_cast<size_t>(i)], c);
    return State{k, std::move(v)};
}

State InducedModule::zero_state(int k) const { return State{k, SparseVector(mono_count(k))}; }

State InducedModule::vacuum_state() const { return fiber_state(0); }

State InducedModule::fiber_state(int u) const {
    SparseVector v(mono_count(0));
    v.set(mono_index(0, Pbw{{}, u}), Rational(1));
    return make_state(0, std::move(v));
}

State InducedModule::generator_state(bool is_b, int gen) const {
    if (!is_algebra()) throw input_error("generator states live in the algebra");
    int dim_gen = is_b ? L_->tca().dim1 : L_->tca().dim0;
    SparseVector e = unit_vector(dim_gen, gen);
    return is_b ? c1_state(e) : c0_state(e);
}

State InducedModule::c0_state(const SparseVector& a_vec) const {
    return act_comb(L_->reduce_a(a_vec, Rational(-1)), vacuum_state());
}

State InducedModule::c1_state(const SparseVector& b_vec) const {
    return act_comb(L_->reduce_b(b_vec, Rational(-1)), vacuum_state());
}

State InducedModule::translate(const State& s) const {
    if (!is_algebra()) throw input_error("translation operator lives on the algebra side");
    int kt = s.k + T();
    if (kt > grid()) throw window_error("translation leaves the window");
    SparseVector acc(mono_count(kt));
    for (const auto& [mi, c] : s.v.entries()) acc.axpy(c, translate_mono(s.k, mi));
    return make_state(kt, std::move(acc));
}

SparseVector InducedModule::translate_mono(int k, int mi) const {
    int kt = k + T();
    const Pbw& mono = monos(k)[static_cast<size_t>(mi)];
    SparseVector out(mono_count(kt));
    if (mono.modes.empty()) return out; // D 1 = 0
    Mode y = mono.modes.front();
    Pbw rest;
    rest.modes.assign(mono.modes.begin() + 1, mono.modes.end());
    rest.fiber = mono.fiber;
    int kr = k - static_cast<int>(deg_num_of(y, T()));
    int ri = mono_index(kr, rest);
    // D(y(m) w) = -m y(m-1) w + y(m) D w
    ModeComb shifted = L_->reduce_gen(y.is_b, y.gen, y.exp - Rational(1));
    for (const auto& [z, c] : shifted) out.axpy((Rational(0) - y.exp) * c, act_mono(z, kr, ri));
    SparseVector rec = translate_mono(kr, ri);
    for (const auto& [j, c] : rec.entries()) out.axpy(c, act_mono(y, kr + T(), j));
    return out;
}

void InducedModule::install_relations(std::vector<Subspace> rels, Flavor f) {
    if (static_cast<int>(rels.size()) != grid() + 1) throw input_error("relation vector has wrong length");
    for (int k = 0; k <= grid(); ++k) {
        Slice& sl = slices_[static_cast<size_t>(k)];
        if (rels[static_cast<size_t>(k)].ambient() != static_cast<int>(sl.monos.size()))
            throw input_error("relation ambient mismatch");
        sl.rel = std::move(rels[static_cast<size_t>(k)]);
        sl.complement.clear();
        std::vector<bool> pivot(sl.monos.size(), false);
        for (int p : sl.rel.pivots()) pivot[static_cast<size_t>(p)] = true;
        for (size_t i = 0; i < sl.monos.size(); ++i)
            if (!pivot[i]) sl.complement.push_back(static_cast<int>(i));
    }
    flavor_ = f;
}

std::string InducedModule::mono_str(int k, int mi) const { return monos(k)[static_cast<size_t>(mi)].str(); }

std::vector<State> ideal_generators(const InducedModule& vl, const VertexAlgebroid& b) {
    if (vl.flavor() != Flavor::VacuumAlgebra) throw input_error("ideal generators live in V_L");
    const int nA = b.A.dim, nB = b.dimB;
    std::vector<State> out;
    auto ea = [&](int i) { return unit_vector(nA, i); };
    auto eb = [&](int i) { return unit_vector(nB, i); };
    if (nA > 0) {
        State s = add_states(vl.c0_state(b.A.unit_vec()), scale_state(Rational(-1), vl.vacuum_state()));
        if (!s.zero()) out.push_back(s);
    }
    for (int i = 0; i < nA; ++i)
        for (int j = 0; j < nA; ++j) {
            Mode ai{false, i, Rational(-1)};
            State s = vl.act(ai, vl.c0_state(ea(j)));
            s = add_states(s, scale_state(Rational(-1), vl.c0_state(b.A.mul_vv(ea(i), ea(j)))));
            if (!s.zero()) out.push_back(s);
        }
    for (int i = 0; i < nA; ++i)
        for (int j = 0; j < nB; ++j) {
            Mode ai{false, i, Rational(-1)};
            State s = vl.act(ai, vl.c1_state(eb(j)));
            s = add_states(s, scale_state(Rational(-1), vl.c1_state(b.act(ea(i), eb(j)))));
            if (!s.zero()) out.push_back(s);
        }
    return out;
}

std::vector<Subspace> close_under_actions(const InducedModule& m, std::vector<Subspace> spans) {
    std::vector<Mode> phase1, phase2;
    for (const Mode& x : m.L().basis()) (x.degree().sign() <= 0 ? phase1 : phase2).push_back(x);

    auto sweep = [&](const std::vector<Mode>& modes) {
        bool grew_any = false;
        std::deque<std::pair<int, SparseVector>> work;
        for (int k = 0; k <= m.grid(); ++k)
            for (const auto& row : spans[static_cast<size_t>(k)].rows()) work.emplace_back(k, row);
        while (!work.empty()) {
            auto [k, row] = std::move(work.front());
            work.pop_front();
            for (const Mode& x : modes) {
                int kt = m.target_slice(x, k);
                if (kt < 0 || kt > m.grid()) continue;
                SparseVector img;
                try {
                    img = m.act_vec(x, k, row);
                } catch (const window_error&) {
                    continue; // leaves the truncated carrier (a-cap)
                }
                if (img.zero()) continue;
                SparseVector res = spans[static_cast<size_t>(kt)].reduce(img);
                if (res.zero()) continue;
                spans[static_cast<size_t>(kt)].insert(res);
                work.emplace_back(kt, std::move(res));
                grew_any = true;
            }
        }
        return grew_any;
    };

    bool changed = true;
    while (changed) {
        changed = false;
        if (sweep(phase1)) changed = true;
        if (sweep(phase2)) changed = true;
    }
    return spans;
}

std::vector<Subspace> ideal_truncation(const InducedModule& vl, const VertexAlgebroid& b) {
    std::vector<Subspace> seeds;
    seeds.reserve(static_cast<size_t>(vl.grid() + 1));
    for (int k = 0; k <= vl.grid(); ++k) seeds.emplace_back(vl.mono_count(k));
    for (const State& s0 : ideal_generators(vl, b)) {
        State cur = s0;
        while (true) {
            seeds[static_cast<size_t>(cur.k)].insert(cur.v);
            if (cur.k + vl.T() > vl.grid()) break;
            cur = vl.translate(cur);
            if (cur.zero()) break;
        }
    }
    return close_under_actions(vl, std::move(seeds));
}

CheckReport verify_invariance(const InducedModule& m, const std::vector<Subspace>& rels) {
    CheckReport rep;
    rep.subject = "relation-invariance";
    long skipped = 0;
    for (int k = 0; k <= m.grid(); ++k)
        for (const auto& row : rels[static_cast<size_t>(k)].rows())
            for (const Mode& x : m.L().basis()) {
                int kt = m.target_slice(x, k);
                if (kt < 0 || kt > m.grid()) continue;
                SparseVector img;
                try {
                    img = m.act_vec(x, k, row);
                } catch (const window_error&) {
                    ++skipped;
                    continue;
                }
                ++rep.checked;
                if (!rels[static_cast<size_t>(kt)].contains(img))
                    rep.fail("relation-invariance", {k}, x.str() + " * " + row.str(), "inside relations");
            }
    if (skipped > 0) rep.notes.push_back(std::to_string(skipped) + " actions left the truncated carrier (skipped)");
    return rep;
}

InducedModule build_vb(const InducedModule& vl, const VertexAlgebroid& b) {
    std::vector<Subspace> rels = ideal_truncation(vl, b);
    InducedModule vb = vl;
    vb.install_relations(rels, Flavor::QuotientAlgebra);
    CheckReport inv = verify_invariance(vb, rels);
    if (!inv.pass())
        throw consistency_error("ideal truncation is not action-invariant: " + inv.violations.front().str());
    if (vb.dim(0) != b.A.dim)
        throw consistency_error("dim V_B(0) = " + std::to_string(vb.dim(0)) + " but dim A = " + std::to_string(b.A.dim));
    if (vb.grid() >= 1 && vb.dim(1) != b.dimB)
        throw consistency_error("dim V_B(1) = " + std::to_string(vb.dim(1)) + " but dim B = " + std::to_string(b.dimB));
    if (b.A.dim > 0) {
        LinMap id0 = slice0_identification(vb);
        if (span(vb.dim(0), id0).dim() != b.A.dim) throw consistency_error("A -> V_B(0) identification is not bijective");
    }
    if (vb.grid() >= 1 && b.dimB > 0) {
        LinMap id1 = slice1_identification(vb);
        if (span(vb.dim(1), id1).dim() != b.dimB) throw consistency_error("B -> V_B(1) identification is not bijective");
    }
    return vb;
}

LinMap slice0_identification(const InducedModule& vb) {
    const Tca& c = vb.L().tca();
    LinMap out = make_linmap(c.dim0, vb.dim(0));
    for (int i = 0; i < c.dim0; ++i)
        out[static_cast<size_t>(i)] = vb.quotient_coords(vb.c0_state(unit_vector(c.dim0, i)));
    return out;
}

LinMap slice1_identification(const InducedModule& vb) {
    const Tca& c = vb.L().tca();
    LinMap out = make_linmap(c.dim1, vb.dim(vb.T()));
    for (int i = 0; i < c.dim1; ++i)
        out[static_cast<size_t>(i)] = vb.quotient_coords(vb.c1_state(unit_vector(c.dim1, i)));
    return out;
}

CheckReport verify_spanning(const InducedModule& vb) {
    CheckReport rep;
    rep.subject = "pbw-spanning";
    for (int k = vb.T(); k <= vb.grid(); ++k) {
        Subspace sp(vb.dim(k));
        for (int mi = 0; mi < vb.mono_count(k); ++mi) {
            if (vb.monos(k)[static_cast<size_t>(mi)].a_count() != 0) continue;
            SparseVector v(vb.mono_count(k));
            v.set(mi, Rational(1));
            sp.insert(vb.quotient_coords(State{k, vb.reduce(k, v)}));
        }
        ++rep.checked;
        if (sp.dim() != vb.dim(k))
            rep.fail("pbw-spanning", {k}, "rank " + std::to_string(sp.dim()), "dim " + std::to_string(vb.dim(k)));
    }
    return rep;
}

CheckReport verify_level_one(const InducedModule& m, int unit_index) {
    CheckReport rep;
    rep.subject = "level-one";
    Mode e{false, unit_index, Rational(-1)};
    for (int k = 0; k <= m.grid(); ++k)
        for (int pos = 0; pos < m.dim(k); ++pos) {
            SparseVector q(m.dim(k));
            q.set(pos, Rational(1));
            State s = m.state_from_quotient(k, q);
            State img = m.act(e, m.make_state(k, s.v));
            ++rep.checked;
            SparseVector got = m.quotient_coords(img);
            SparseVector diff = got;
            diff -= q;
            if (!diff.zero()) rep.fail("level-one", {k, pos}, got.str(), q.str());
        }
    return rep;
}

ExtendedAutomorphism extend_automorphism(const InducedModule& m, const GradedEndomorphism& f) {
    if (!m.is_algebra()) throw input_error("extend_automorphism targets the N-graded vertex algebra");
    ExtendedAutomorphism out;
    out.descent.subject = "automorphism-descent";
    const LoopLie& L = m.L();

    // raw image of a monomial: apply the f-translated modes right to left
    std::function<SparseVector(int, int)> fbar_mono = [&](int k, int mi) {
        const Pbw& mono = m.monos(k)[static_cast<size_t>(mi)];
        SparseVector cur(m.mono_count(0));
        cur.set(m.mono_index(0, Pbw{{}, mono.fiber}), Rational(1));
        int kc = 0;
        for (auto it = mono.modes.rbegin(); it != mono.modes.rend(); ++it) {
            const Mode& y = *it;
            ModeComb img = y.is_b ? L.reduce_b(apply_map(f.on_b, unit_vector(L.tca().dim1, y.gen)), y.exp)
                                  : L.reduce_a(apply_map(f.on_a, unit_vector(L.tca().dim0, y.gen)), y.exp);
            int kt = m.target_slice(y, kc);
            SparseVector next(m.mono_count(kt));
            for (const auto& [z, c] : img)
                for (const auto& [j, cj] : cur.entries()) next.axpy(c * cj, m.act_mono(z, kc, j));
            cur = std::move(next);
            kc = kt;
        }
        return cur;
    };

    for (int k = 0; k <= m.grid(); ++k) {
        LinMap mk = make_linmap(m.dim(k), m.dim(k));
        for (int pos = 0; pos < m.dim(k); ++pos) {
            int mi = m.complement(k)[static_cast<size_t>(pos)];
            SparseVector raw = fbar_mono(k, mi);
            mk[static_cast<size_t>(pos)] = m.quotient_coords(State{k, m.reduce(k, raw)});
        }
        out.slice_maps.push_back(std::move(mk));
        for (const auto& row : m.relations(k).rows()) {
            SparseVector img(m.mono_count(k));
            for (const auto& [mi, c] : row.entries()) img.axpy(c, fbar_mono(k, mi));
            ++out.descent.checked;
            if (!m.relations(k).contains(img)) out.descent.fail("descent", {k}, img.str(), "inside relations");
        }
    }
    return out;
}

State apply_extended(const InducedModule& m, const ExtendedAutomorphism& f, const State& s) {
    SparseVector q = m.quotient_coords(s);
    SparseVector img = apply_map(f.slice_maps[static_cast<size_t>(s.k)], q);
    State out = m.state_from_quotient(s.k, img);
    return State{out.k, m.reduce(out.k, out.v)};
}

} // namespace vab
