#include "mss/pipeline.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "mss/error.hpp"

namespace mss {

std::vector<LinearizingChart> AnalysisReport::charts_of(OrbitKind kind) const {
    std::vector<LinearizingChart> out;
    for (const auto& c : charts)
        if (c.kind == kind) out.push_back(c);
    return out;
}

const LinearizingChart* AnalysisReport::chart_for(int orbit, int point_index) const {
    for (const auto& c : charts)
        if (c.owner == orbit && c.point_index == point_index) return &c;
    return nullptr;
}

namespace {

QuotientSummary build_quotient(const MapSpec& m, const AnalysisReport& r, const PeriodicOrbit& sink,
                               const GrowthOptions& g, const std::vector<LinearizingChart>& sink_boxes,
                               bool boundary_curves) {
    QuotientSummary q;
    q.sink = sink.id;
    const LinearizingChart* ch = r.chart_for(sink.id, 0);
    double radius = ch ? ch->r : 0.5;
    bool built = false;
    for (int attempt = 0; attempt < 12 && !built; ++attempt, radius *= 0.5) {
        try {
            q.chart = build_sink_quotient(m, sink, radius);
            built = true;
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::NotTrapping) {
                q.error = e.what();
                return q;
            }
        }
    }
    if (!built) {
        q.error = "no trapping circle found";
        return q;
    }
    for (const auto& s : r.separatrices) {
        if (s.stability != Stability::Unstable || s.curve.terminal_orbit != sink.id) continue;
        CurveSummary c;
        c.separatrix = s.id;
        c.saddle = s.owner;
        c.branch = s.branch();
        c.m_gamma = s.period;
        c.expected_winding = s.period / sink.period;
        try {
            c.curve = project_curve(m, q.chart, s);
            if (boundary_curves) {
                const LinearizingChart* sc = r.chart_for(s.owner, s.point_index);
                if (sc) {
                    auto [a, b] = project_neighborhood_boundary(m, q.chart, r.orbit(s.owner), s.branch(), *sc, g,
                                                                sink_boxes);
                    c.boundary = {a, b};
                }
            }
        } catch (const Error& e) {
            c.error = e.what();
        }
        q.curves.push_back(std::move(c));
    }
    return q;
}

std::vector<PairSummary> summarize_pairs(const std::vector<HeteroclinicPoint>& all,
                                         const std::vector<HeteroclinicPoint>& reps) {
    std::map<std::pair<int, int>, PairSummary> by;
    for (const auto& h : all) {
        auto& p = by[{h.from_saddle, h.to_saddle}];
        p.from = h.from_saddle;
        p.to = h.to_saddle;
        ++p.crossings;
        if (std::find(p.signs.begin(), p.signs.end(), h.sign) == p.signs.end()) p.signs.push_back(h.sign);
    }
    for (const auto& h : reps) ++by[{h.from_saddle, h.to_saddle}].orbits;
    std::vector<PairSummary> out;
    for (auto& [k, p] : by) {
        std::sort(p.signs.begin(), p.signs.end());
        out.push_back(p);
    }
    return out;
}

}  // namespace

AnalysisReport run_analyze(const MapSpec& m, const AnalysisOptions& opts) {
    AnalysisReport r;
    r.map_name = m.name;
    r.surface = m.surface.kind();
    r.parameters = m.parameters;
    r.search_boxes = m.search_boxes();
    r.options = opts;

    PeriodicSearchOptions po;
    po.max_period = opts.max_period;
    po.grid_density = opts.grid_density;
    r.orbits = find_periodic_points(m, po);

    for (const auto& o : r.orbits)
        for (int i = 0; i < o.period; ++i) r.charts.push_back(auto_linearizing_chart(m, o, i));
    std::vector<LinearizingChart> sink_boxes = r.charts_of(OrbitKind::Sink);
    std::vector<LinearizingChart> source_boxes = r.charts_of(OrbitKind::Source);

    GrowthOptions g;
    g.arclength_budget = opts.arclength_budget;
    g.max_step = opts.max_step;
    g.max_angle_deg = opts.max_angle_deg;
    int max_sep_period = 1;
    for (const auto& o : r.orbits) {
        if (o.kind != OrbitKind::Saddle) continue;
        for (int i = 0; i < o.period; ++i) {
            for (Branch b : {Branch::UnstablePlus, Branch::UnstableMinus, Branch::StablePlus, Branch::StableMinus}) {
                if (!is_unstable(b) && !m.has_inverse()) continue;
                Separatrix s = grow_separatrix(m, o, b, g, is_unstable(b) ? sink_boxes : source_boxes, i);
                s.id = static_cast<int>(r.separatrices.size());
                max_sep_period = std::max(max_sep_period, s.period);
                r.separatrices.push_back(std::move(s));
            }
        }
    }

    for (const auto& su : r.separatrices) {
        if (su.stability != Stability::Unstable) continue;
        for (const auto& ss : r.separatrices) {
            if (ss.stability != Stability::Stable || ss.owner == su.owner) continue;
            auto pts = detect_intersections(m, su, ss);
            r.crossings.insert(r.crossings.end(), pts.begin(), pts.end());
        }
    }
    r.k_max = default_k_max(max_sep_period, opts.arclength_budget);
    r.heteroclinic_orbits = dedup_by_orbit(r.crossings, m, r.k_max);
    r.pairs = summarize_pairs(r.crossings, r.heteroclinic_orbits);
    r.orientability = classify_orientability(r.crossings);

    std::vector<Witness> het, basin;
    for (const auto& h : r.heteroclinic_orbits) het.push_back({h.from_saddle, h.to_saddle, h.orbit_id});
    for (const auto& s : r.separatrices) {
        if (s.curve.terminal_orbit < 0) continue;
        if (s.stability == Stability::Unstable) basin.push_back({s.owner, s.curve.terminal_orbit, s.id});
        else basin.push_back({s.curve.terminal_orbit, s.owner, s.id});
    }
    r.graph = build_order_graph(r.orbits, het, basin);

    for (const auto& o : r.orbits)
        if (o.kind == OrbitKind::Sink) r.quotients.push_back(build_quotient(m, r, o, g, sink_boxes, opts.boundary_curves));

    r.theorem = evaluate_theorem(r);
    return r;
}

TheoremVerdict evaluate_theorem(const AnalysisReport& r) {
    TheoremVerdict v;
    v.orientable = r.orientability == Orientability::Orientable;
    v.beh = r.graph.beh;
    v.pass = !(v.orientable && v.beh > 1);
    if (!v.pass) {
        std::ostringstream d;
        d << "orientable heteroclinic set with beh = " << v.beh << "; heteroclinic orbits:";
        for (const auto& h : r.heteroclinic_orbits)
            d << " #" << h.orbit_id << "(O" << h.from_saddle << "->O" << h.to_saddle << ", sign " << h.sign << ")";
        v.diagnostic = d.str();
    }
    return v;
}

namespace {

bool same_crossing(const HeteroclinicPoint& a, const HeteroclinicPoint& b) {
    return a.unstable_separatrix == b.unstable_separatrix && a.stable_separatrix == b.stable_separatrix &&
           a.seg_u == b.seg_u && a.seg_s == b.seg_s;
}

void rederive(AnalysisReport& r, const std::string& note) {
    r.orientability = classify_orientability(r.crossings);
    r.pairs = summarize_pairs(r.crossings, r.heteroclinic_orbits);
    r.theorem = evaluate_theorem(r);
    if (!r.theorem.pass) r.theorem.diagnostic += "; " + note;
}

}  // namespace

void inject_flipped_sign(AnalysisReport& r, size_t crossing_index) {
    HeteroclinicPoint& c = r.crossings.at(crossing_index);
    c.sign = -c.sign;
    for (auto& h : r.heteroclinic_orbits)
        if (same_crossing(h, c)) h.sign = c.sign;
    rederive(r, "flipped crossing " + std::to_string(crossing_index));
}

void inject_uniform_sign(AnalysisReport& r, int sign) {
    for (auto& h : r.crossings) h.sign = sign;
    for (auto& h : r.heteroclinic_orbits) h.sign = sign;
    rederive(r, "all signs forced to " + std::to_string(sign));
}

std::vector<TheoremCheck> run_verify_theorem(const std::vector<std::string>& names) {
    std::vector<TheoremCheck> out;
    for (const auto& name : names) {
        TheoremCheck c;
        c.name = name;
        try {
            const CatalogEntry& e = find_catalog_entry(name);
            AnalysisOptions o = e.defaults;
            o.boundary_curves = false;
            AnalysisReport r = run_analyze(e.build(), o);
            c.pass = r.theorem.pass;
            c.orientability = orientability_name(r.orientability);
            c.beh = r.graph.beh;
            c.diagnostic = r.theorem.diagnostic;
        } catch (const Error& err) {
            c.pass = false;
            c.error = true;
            c.diagnostic = err.what();
        }
        out.push_back(c);
    }
    return out;
}

}  // namespace mss
