// mss: command line front end for the Morse-Smale surface analysis library.

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "mss/config.hpp"
#include "mss/error.hpp"
#include "mss/pipeline.hpp"
#include "mss/report.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitError = 1;
constexpr int kExitTheoremFail = 2;

struct MapSource {
    std::string name;
    std::string config;
    int max_period = 0;
    int grid = 0;
    double budget = 0.0;
};

std::pair<mss::MapSpec, mss::AnalysisOptions> resolve(const MapSource& src) {
    mss::MapSpec m;
    mss::AnalysisOptions o;
    if (!src.config.empty()) {
        mss::MapConfig c = mss::load_config_file(src.config);
        m = std::move(c.map);
        o = c.options;
    } else if (!src.name.empty()) {
        const mss::CatalogEntry& e = mss::find_catalog_entry(src.name);
        m = e.build();
        o = e.defaults;
    } else {
        throw mss::Error(mss::ErrorKind::InvalidArgument, "give a catalog name or --config PATH");
    }
    if (src.max_period > 0) o.max_period = src.max_period;
    if (src.grid > 0) o.grid_density = src.grid;
    if (src.budget > 0) o.arclength_budget = src.budget;
    return {std::move(m), o};
}

std::vector<std::string> split_formats(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

void print_summary(const mss::AnalysisReport& r) {
    int sinks = 0, saddles = 0, sources = 0;
    for (const auto& o : r.orbits) {
        if (o.kind == mss::OrbitKind::Sink) ++sinks;
        else if (o.kind == mss::OrbitKind::Saddle) ++saddles;
        else ++sources;
    }
    std::printf("map %s on %s\n", r.map_name.c_str(), mss::surface_name(r.surface));
    std::printf("orbits: %d sinks, %d saddles, %d sources\n", sinks, saddles, sources);
    std::printf("separatrices: %zu, heteroclinic crossings: %zu in %zu orbits (k_max %d)\n", r.separatrices.size(),
                r.crossings.size(), r.heteroclinic_orbits.size(), r.k_max);
    for (const auto& p : r.pairs) {
        std::printf("  O%d -> O%d: %d crossings, %d orbits, signs", p.from, p.to, p.crossings, p.orbits);
        for (int s : p.signs) std::printf(" %+d", s);
        std::printf("\n");
    }
    std::printf("orientability: %s\nbeh: %d\n", mss::orientability_name(r.orientability), r.graph.beh);
    for (const auto& q : r.quotients) {
        std::printf("quotient of sink O%d:", q.sink);
        if (!q.error.empty()) std::printf(" %s", q.error.c_str());
        for (const auto& c : q.curves) std::printf(" S%d winding %d", c.separatrix, c.curve.winding);
        std::printf("\n");
    }
    std::printf("theorem: %s\n", r.theorem.pass ? "PASS" : "FAIL");
    if (!r.theorem.diagnostic.empty()) std::printf("  %s\n", r.theorem.diagnostic.c_str());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Morse-Smale structure of surface diffeomorphisms"};
    app.require_subcommand(1);

    MapSource analyze_src;
    std::string out_dir = "mss_out";
    std::string formats = "json,csv,dot,svg";
    auto* analyze = app.add_subcommand("analyze", "Run the full pipeline on a catalog map or a config file");
    analyze->add_option("name", analyze_src.name, "Catalog map name");
    analyze->add_option("--config", analyze_src.config, "TOML or JSON map config")->check(CLI::ExistingFile);
    analyze->add_option("--max-period", analyze_src.max_period, "Largest period searched")->check(CLI::PositiveNumber);
    analyze->add_option("--grid", analyze_src.grid, "Newton seeds per axis")->check(CLI::Range(2, 4096));
    analyze->add_option("--budget", analyze_src.budget, "Separatrix arclength budget")->check(CLI::PositiveNumber);
    analyze->add_option("--out", out_dir, "Output directory");
    analyze->add_option("--formats", formats, "Comma separated subset of json,csv,dot,svg");

    bool verify_all = false;
    std::vector<std::string> verify_names;
    auto* verify = app.add_subcommand("verify-theorem", "Check orientable => beh = 1 on catalog maps");
    verify->add_flag("--all", verify_all, "Every catalog entry");
    verify->add_option("names", verify_names, "Catalog names");

    bool list_only = false;
    auto* examples = app.add_subcommand("examples", "Show the built-in catalog");
    examples->add_flag("--list", list_only, "Names only");

    MapSource orbit_src;
    int sink_id = -1;
    std::string orbit_out;
    auto* orbit_space = app.add_subcommand("orbit-space", "Winding data in the orbit space of one sink basin");
    orbit_space->add_option("name", orbit_src.name, "Catalog map name");
    orbit_space->add_option("--config", orbit_src.config, "TOML or JSON map config")->check(CLI::ExistingFile);
    orbit_space->add_option("--sink", sink_id, "Sink orbit id")->required();
    orbit_space->add_option("--budget", orbit_src.budget, "Separatrix arclength budget")->check(CLI::PositiveNumber);
    orbit_space->add_option("--out", orbit_out, "Write quotient_<sink>.svg here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitError;
    }

    try {
        if (*analyze) {
            auto [m, o] = resolve(analyze_src);
            mss::AnalysisReport r = mss::run_analyze(m, o);
            print_summary(r);
            for (const auto& p : mss::emit_outputs(r, out_dir, split_formats(formats)))
                std::printf("wrote %s\n", p.c_str());
            return r.theorem.pass ? kExitPass : kExitTheoremFail;
        }
        if (*verify) {
            std::vector<std::string> names = verify_names;
            if (verify_all)
                for (const auto& e : mss::catalog()) names.push_back(e.name);
            bool failed = false, errored = false;
            for (const auto& c : mss::run_verify_theorem(names)) {
                if (c.error) {
                    errored = true;
                    std::printf("ERROR %-24s %s\n", c.name.c_str(), c.diagnostic.c_str());
                    continue;
                }
                failed |= !c.pass;
                std::printf("%s  %-24s %-15s beh=%d\n", c.pass ? "PASS" : "FAIL", c.name.c_str(),
                            c.orientability.c_str(), c.beh);
                if (!c.diagnostic.empty()) std::printf("      %s\n", c.diagnostic.c_str());
            }
            std::printf("%zu checked\n", names.size());
            if (failed) return kExitTheoremFail;
            return errored ? kExitError : kExitPass;
        }
        if (*examples) {
            for (const auto& e : mss::catalog()) {
                if (list_only) {
                    std::printf("%s\n", e.name.c_str());
                    continue;
                }
                const auto& x = e.expected;
                std::printf("%s\n  %s\n  expected: %s, beh=%d, %d sinks / %d saddles / %d sources", e.name.c_str(),
                            e.description.c_str(), x.orientability.c_str(), x.beh, x.sinks, x.saddles, x.sources);
                if (x.winding >= 0) std::printf(", winding %d", x.winding);
                std::printf("\n  max_period=%d\n", e.defaults.max_period);
            }
            return kExitPass;
        }
        if (*orbit_space) {
            auto [m, o] = resolve(orbit_src);
            mss::AnalysisReport r = mss::run_analyze(m, o);
            for (const auto& q : r.quotients) {
                if (q.sink != sink_id) continue;
                if (!q.error.empty()) throw mss::Error(mss::ErrorKind::NotTrapping, q.error);
                std::printf("sink O%d: m_omega=%d m_V=%d r=%.6g\n", q.sink, q.chart.period, q.chart.components,
                            q.chart.r);
                for (const auto& c : q.curves) {
                    std::printf("  S%d from saddle O%d (%s): m_gamma=%d winding=%d closed=%s gap=%.3g", c.separatrix,
                                c.saddle, mss::branch_name(c.branch), c.m_gamma, c.curve.winding,
                                c.curve.closed ? "yes" : "no", c.curve.closure_gap);
                    for (const auto& b : c.boundary) std::printf(" boundary=%d", b.winding);
                    if (!c.error.empty()) std::printf(" error: %s", c.error.c_str());
                    std::printf("\n");
                }
                if (!orbit_out.empty()) {
                    std::filesystem::create_directories(orbit_out);
                    std::string path = orbit_out + "/quotient_" + std::to_string(q.sink) + ".svg";
                    std::ofstream f(path, std::ios::binary);
                    if (!(f << mss::quotient_svg(r, q))) throw mss::Error(mss::ErrorKind::IoError, "cannot write " + path);
                    std::printf("wrote %s\n", path.c_str());
                }
                return kExitPass;
            }
            throw mss::Error(mss::ErrorKind::InvalidArgument, "orbit " + std::to_string(sink_id) + " is not a sink");
        }
    } catch (const mss::Error& e) {
        std::fprintf(stderr, "error: %s%s\n", e.what(), e.out_of_scope() ? " (map out of scope)" : "");
        return kExitError;
    }
    return kExitError;
}
