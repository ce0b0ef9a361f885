#include "armplan/scenario_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>

#include "armplan/errors.hpp"

namespace armplan::io {

namespace {

constexpr const char* kHeader = "armplan-scenario v1";

double to_radians(double degrees) { return degrees * std::numbers::pi / 180.0; }
double to_degrees(double radians) { return radians * 180.0 / std::numbers::pi; }

struct Line {
    int number;
    std::string key;
    std::vector<std::string> args;
};

double parse_double(const Line& ln, const std::string& s) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ParseError(ln.number, "expected a number, got '" + s + "'");
    }
}

int parse_int(const Line& ln, const std::string& s) {
    try {
        std::size_t pos = 0;
        const int v = std::stoi(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ParseError(ln.number, "expected an integer, got '" + s + "'");
    }
}

bool parse_switch(const Line& ln, const std::string& s) {
    if (s == "on" || s == "true" || s == "1") return true;
    if (s == "off" || s == "false" || s == "0") return false;
    throw ParseError(ln.number, "expected on/off, got '" + s + "'");
}

void need_args(const Line& ln, std::size_t n) {
    if (ln.args.size() != n) {
        throw ParseError(ln.number, "key '" + ln.key + "' expects " + std::to_string(n) +
                                        " value(s), got " + std::to_string(ln.args.size()));
    }
}

std::vector<double> parse_array(const Line& ln, std::size_t n) {
    need_args(ln, n);
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = parse_double(ln, ln.args[i]);
    return out;
}

// The parameter-table profiles.
double profile_eps(double s) { return 0.1 * (1.0 - 0.9 * s); }
double profile_mu(double s) { return 1.0 - 0.9 * s; }
double profile_omega(double s) { return 2.0 * std::numbers::pi * (2.0 + s * s); }

void apply_paper_discrete(LoadedScenario& ls) {
    DiscreteArmParams& p = ls.scenario.discrete;
    p.links = 8;
    p.lengths.assign(8, 1.0 / 8.0);
    p.eps.resize(8);
    p.mu.resize(8);
    p.alpha.resize(8);
    p.nu.assign(8, 1.0);
    p.ghost_length = 1.0 / 8.0;
    for (int k = 0; k < 8; ++k) {
        const double s = k / 8.0;
        p.eps[k] = profile_eps(s);
        p.mu[k] = profile_mu(s);
        p.alpha[k] = (ls.alpha_interpretation == "omega-scaled")
                         ? profile_omega(s) * p.lengths[k]
                         : profile_omega(s);
    }
    ls.scenario.samples_per_link = 13;
    ls.scenario.target = {0.368, -0.085};
    ls.scenario.delta = 1e-8;
    ls.scenario.tau = 1e-10;
}

void apply_paper_soft(LoadedScenario& ls) {
    ls.scenario.soft = SoftArmParams::from_profiles(100, profile_eps, profile_mu, profile_omega);
    ls.scenario.target = {0.368, -0.085};
    ls.scenario.delta = 1e-8;
    ls.scenario.tau = 1e-10;
}

}  // namespace

LoadedScenario parse_scenario(std::istream& in, const std::string& name) {
    std::vector<Line> lines;
    {
        std::string raw;
        int number = 0;
        bool have_header = false;
        while (std::getline(in, raw)) {
            ++number;
            if (const std::size_t hash = raw.find('#'); hash != std::string::npos) {
                raw.erase(hash);
            }
            std::istringstream ss(raw);
            std::string tok;
            std::vector<std::string> toks;
            while (ss >> tok) toks.push_back(tok);
            if (toks.empty()) continue;
            if (!have_header) {
                if (toks.size() != 2 || toks[0] + " " + toks[1] != kHeader) {
                    throw ParseError(number, std::string("first line must be '") + kHeader + "'");
                }
                have_header = true;
                continue;
            }
            Line ln;
            ln.number = number;
            ln.key = toks[0];
            ln.args.assign(toks.begin() + 1, toks.end());
            lines.push_back(std::move(ln));
        }
        if (!have_header) throw ParseError(1, std::string("missing '") + kHeader + "' header");
    }

    LoadedScenario ls;
    ls.name = name;

    // model and alpha-interpretation steer the profile expansion, so they
    // are resolved first regardless of position.
    bool model_set = false;
    for (const Line& ln : lines) {
        if (ln.key == "model") {
            need_args(ln, 1);
            if (ln.args[0] == "discrete") {
                ls.scenario.model = ArmModel::discrete;
            } else if (ln.args[0] == "soft") {
                ls.scenario.model = ArmModel::soft;
            } else {
                throw ParseError(ln.number, "model must be 'discrete' or 'soft'");
            }
            model_set = true;
        } else if (ln.key == "alpha-interpretation") {
            need_args(ln, 1);
            if (ln.args[0] != "verbatim" && ln.args[0] != "omega-scaled") {
                throw ParseError(ln.number,
                                 "alpha-interpretation must be 'verbatim' or 'omega-scaled'");
            }
            ls.alpha_interpretation = ln.args[0];
        }
    }
    if (!model_set) throw ParseError(1, "scenario must set 'model'");

    std::vector<Obstacle> members;
    bool target_set = false;

    for (const Line& ln : lines) {
        const std::string& key = ln.key;
        Scenario& sc = ls.scenario;
        if (key == "model" || key == "alpha-interpretation") {
            continue;
        } else if (key == "profile") {
            need_args(ln, 1);
            if (ln.args[0] == "paper-discrete") {
                if (sc.model != ArmModel::discrete) {
                    throw ParseError(ln.number, "profile paper-discrete requires model discrete");
                }
                apply_paper_discrete(ls);
            } else if (ln.args[0] == "paper-soft") {
                if (sc.model != ArmModel::soft) {
                    throw ParseError(ln.number, "profile paper-soft requires model soft");
                }
                apply_paper_soft(ls);
            } else {
                throw ParseError(ln.number, "unknown profile '" + ln.args[0] + "'");
            }
            target_set = true;
        } else if (key == "links") {
            need_args(ln, 1);
            sc.discrete.links = parse_int(ln, ln.args[0]);
        } else if (key == "samples-per-link") {
            need_args(ln, 1);
            sc.samples_per_link = parse_int(ln, ln.args[0]);
        } else if (key == "lengths") {
            sc.discrete.lengths = parse_array(ln, sc.discrete.links);
        } else if (key == "alpha") {
            sc.discrete.alpha = parse_array(ln, sc.discrete.links);
        } else if (key == "eps") {
            sc.discrete.eps = parse_array(ln, sc.discrete.links);
        } else if (key == "mu") {
            sc.discrete.mu = parse_array(ln, sc.discrete.links);
        } else if (key == "nu") {
            sc.discrete.nu = parse_array(ln, sc.discrete.links);
        } else if (key == "ell0") {
            need_args(ln, 1);
            sc.discrete.ghost_length = parse_double(ln, ln.args[0]);
        } else if (key == "nodes") {
            need_args(ln, 1);
            sc.soft.nodes = parse_int(ln, ln.args[0]);
        } else if (key == "eps-samples") {
            sc.soft.eps = parse_array(ln, sc.soft.nodes + 1);
        } else if (key == "mu-samples") {
            sc.soft.mu = parse_array(ln, sc.soft.nodes + 1);
        } else if (key == "omega-samples") {
            sc.soft.omega = parse_array(ln, sc.soft.nodes + 1);
        } else if (key == "target") {
            need_args(ln, 2);
            sc.target = {parse_double(ln, ln.args[0]), parse_double(ln, ln.args[1])};
            target_set = true;
        } else if (key == "delta") {
            need_args(ln, 1);
            sc.delta = parse_double(ln, ln.args[0]);
        } else if (key == "tau") {
            need_args(ln, 1);
            sc.tau = parse_double(ln, ln.args[0]);
        } else if (key == "obstacle") {
            if (ln.args.empty()) throw ParseError(ln.number, "obstacle needs a variant");
            const std::string& variant = ln.args[0];
            try {
                if (variant == "circle") {
                    need_args(ln, 4);
                    members.push_back(make_circle({parse_double(ln, ln.args[1]),
                                                   parse_double(ln, ln.args[2])},
                                                  parse_double(ln, ln.args[3])));
                } else if (variant == "square") {
                    need_args(ln, 5);
                    // table rotations are clockwise degrees
                    members.push_back(make_square({parse_double(ln, ln.args[1]),
                                                   parse_double(ln, ln.args[2])},
                                                  parse_double(ln, ln.args[3]),
                                                  -to_radians(parse_double(ln, ln.args[4]))));
                } else if (variant == "ellipse") {
                    need_args(ln, 6);
                    members.push_back(make_ellipse({parse_double(ln, ln.args[1]),
                                                    parse_double(ln, ln.args[2])},
                                                   parse_double(ln, ln.args[3]),
                                                   parse_double(ln, ln.args[4]),
                                                   -to_radians(parse_double(ln, ln.args[5]))));
                } else {
                    throw ParseError(ln.number, "unknown obstacle variant '" + variant + "'");
                }
            } catch (const ValidationError& e) {
                throw ParseError(ln.number, e.what());
            }
        } else if (key == "obstacle-distance") {
            need_args(ln, 1);
            if (ln.args[0] == "clamped") {
                sc.metric = ObstacleMetric::clamped_penetration;
            } else if (ln.args[0] == "raw") {
                sc.metric = ObstacleMetric::raw_boundary;
            } else {
                throw ParseError(ln.number, "obstacle-distance must be 'clamped' or 'raw'");
            }
        } else if (key == "gamma") {
            need_args(ln, 1);
            ls.settings.gamma = parse_double(ln, ln.args[0]);
        } else if (key == "tol") {
            need_args(ln, 1);
            ls.settings.tol = parse_double(ln, ln.args[0]);
        } else if (key == "tol-mode") {
            need_args(ln, 1);
            if (ln.args[0] == "relative") {
                ls.settings.tol_absolute = false;
            } else if (ln.args[0] == "absolute") {
                ls.settings.tol_absolute = true;
            } else {
                throw ParseError(ln.number, "tol-mode must be 'relative' or 'absolute'");
            }
        } else if (key == "tau0") {
            need_args(ln, 1);
            ls.settings.tau0 = parse_double(ln, ln.args[0]);
        } else if (key == "max-inner") {
            need_args(ln, 1);
            ls.settings.max_inner = parse_int(ln, ln.args[0]);
        } else if (key == "max-outer") {
            need_args(ln, 1);
            ls.settings.max_outer = parse_int(ln, ln.args[0]);
        } else if (key == "step-rule") {
            need_args(ln, 1);
            if (ln.args[0] == "fixed") {
                ls.settings.step_rule = StepRule::fixed;
            } else if (ln.args[0] == "backtracking") {
                ls.settings.step_rule = StepRule::backtracking;
            } else if (ln.args[0] == "spectral") {
                ls.settings.step_rule = StepRule::spectral;
            } else {
                throw ParseError(ln.number,
                                 "step-rule must be 'fixed', 'backtracking' or 'spectral'");
            }
        } else if (key == "backtracking") {
            // shorthand kept for convenience
            need_args(ln, 1);
            ls.settings.step_rule =
                parse_switch(ln, ln.args[0]) ? StepRule::backtracking : StepRule::fixed;
        } else if (key == "max-move") {
            need_args(ln, 1);
            ls.settings.max_move = parse_double(ln, ln.args[0]);
        } else if (key == "max-move-until-tau") {
            need_args(ln, 1);
            ls.settings.max_move_until_tau = parse_double(ln, ln.args[0]);
        } else if (key == "grid-h") {
            need_args(ln, 1);
            ls.grid_h = parse_double(ln, ln.args[0]);
        } else {
            throw ParseError(ln.number, "unknown key '" + key + "'");
        }
    }

    ls.scenario.obstacles = make_union(std::move(members));
    if (!target_set) throw ParseError(1, "scenario must set 'target'");

    ls.settings.tol_tau = ls.scenario.tau;
    ls.scenario.validate();
    ls.settings.validate();

    if (ls.scenario.model == ArmModel::discrete &&
        alpha_exceeds_closed_form_domain(ls.scenario.discrete)) {
        ls.notes.push_back(
            "some joint angle bounds exceed pi/2; the closed-form equilibrium map is proven "
            "only below pi/2 and is used as-is");
    }
    if (ls.scenario.model == ArmModel::soft && ls.scenario.soft.mu.back() != 0.0) {
        ls.notes.push_back(
            "control weight mu does not vanish at the free end, unlike the assumption behind "
            "the reduced equilibrium equation; profile used as given");
    }
    return ls;
}

LoadedScenario load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open scenario file: " + path.string());
    return parse_scenario(in, path.stem().string());
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

namespace {

void write_array(std::ostream& out, const char* key, const std::vector<double>& v) {
    out << key;
    for (double x : v) out << ' ' << format_number(x);
    out << '\n';
}

void write_obstacles(std::ostream& out, const Obstacle& obs) {
    if (const Union* u = std::get_if<Union>(&obs.shape)) {
        for (const Obstacle& m : u->members) write_obstacles(out, m);
        return;
    }
    if (const Circle* c = std::get_if<Circle>(&obs.shape)) {
        out << "obstacle circle " << format_number(c->center.x) << ' '
            << format_number(c->center.y) << ' ' << format_number(c->radius) << '\n';
    } else if (const Square* s = std::get_if<Square>(&obs.shape)) {
        out << "obstacle square " << format_number(s->center.x) << ' '
            << format_number(s->center.y) << ' ' << format_number(s->side) << ' '
            << format_number(to_degrees(-s->rotation)) << '\n';
    } else if (const Ellipse* e = std::get_if<Ellipse>(&obs.shape)) {
        out << "obstacle ellipse " << format_number(e->center.x) << ' '
            << format_number(e->center.y) << ' ' << format_number(e->a) << ' '
            << format_number(e->b) << ' ' << format_number(to_degrees(-e->rotation)) << '\n';
    }
    // Sampled obstacles have no file form.
}

}  // namespace

void write_scenario(std::ostream& out, const LoadedScenario& ls) {
    const Scenario& sc = ls.scenario;
    out << kHeader << '\n';
    if (sc.model == ArmModel::discrete) {
        out << "model discrete\n";
        out << "links " << sc.discrete.links << '\n';
        out << "samples-per-link " << sc.samples_per_link << '\n';
        write_array(out, "lengths", sc.discrete.lengths);
        write_array(out, "alpha", sc.discrete.alpha);
        write_array(out, "eps", sc.discrete.eps);
        write_array(out, "mu", sc.discrete.mu);
        write_array(out, "nu", sc.discrete.nu);
        out << "ell0 " << format_number(sc.discrete.ghost_length) << '\n';
    } else {
        out << "model soft\n";
        out << "nodes " << sc.soft.nodes << '\n';
        write_array(out, "eps-samples", sc.soft.eps);
        write_array(out, "mu-samples", sc.soft.mu);
        write_array(out, "omega-samples", sc.soft.omega);
    }
    out << "target " << format_number(sc.target.x) << ' ' << format_number(sc.target.y) << '\n';
    out << "delta " << format_number(sc.delta) << '\n';
    out << "tau " << format_number(sc.tau) << '\n';
    write_obstacles(out, sc.obstacles);
    out << "obstacle-distance "
        << (sc.metric == ObstacleMetric::clamped_penetration ? "clamped" : "raw") << '\n';
    out << "gamma " << format_number(ls.settings.gamma) << '\n';
    out << "tol " << format_number(ls.settings.tol) << '\n';
    out << "tol-mode " << (ls.settings.tol_absolute ? "absolute" : "relative") << '\n';
    out << "tau0 " << format_number(ls.settings.tau0) << '\n';
    out << "max-inner " << ls.settings.max_inner << '\n';
    out << "max-outer " << ls.settings.max_outer << '\n';
    const char* rule = ls.settings.step_rule == StepRule::fixed        ? "fixed"
                       : ls.settings.step_rule == StepRule::backtracking ? "backtracking"
                                                                         : "spectral";
    out << "step-rule " << rule << '\n';
    if (std::isfinite(ls.settings.max_move)) {
        out << "max-move " << format_number(ls.settings.max_move) << '\n';
        out << "max-move-until-tau " << format_number(ls.settings.max_move_until_tau) << '\n';
    }
    out << "grid-h " << format_number(ls.grid_h) << '\n';
}

// ---------------------------------------------------------------------------
// CSV writers
// ---------------------------------------------------------------------------

void write_controls_csv(std::ostream& out, const std::vector<double>& u) {
    out << "index,u\n";
    for (std::size_t i = 0; i < u.size(); ++i) {
        out << i << ',' << format_number(u[i]) << '\n';
    }
}

void write_configuration_csv(std::ostream& out, const std::vector<double>& s,
                             const std::vector<Point2>& pts) {
    out << "s,x,y\n";
    for (std::size_t i = 0; i < pts.size(); ++i) {
        out << format_number(s[i]) << ',' << format_number(pts[i].x) << ','
            << format_number(pts[i].y) << '\n';
    }
}

void write_curvature_csv(std::ostream& out, const CurvatureProfile& profile) {
    out << "s,kappa,omega_bar_plus,omega_bar_minus\n";
    for (std::size_t i = 0; i < profile.s.size(); ++i) {
        out << format_number(profile.s[i]) << ',' << format_number(profile.kappa[i]) << ','
            << format_number(profile.upper[i]) << ',' << format_number(profile.lower[i]) << '\n';
    }
}

void write_trace_csv(std::ostream& out, const std::vector<TraceRow>& rows) {
    out << "round,tau,inner_iterations,cost,max_penetration\n";
    for (const TraceRow& r : rows) {
        out << r.round << ',' << format_number(r.tau) << ',' << r.inner_iterations << ','
            << format_number(r.final_cost) << ',' << format_number(r.max_penetration) << '\n';
    }
}

void write_field_csv(std::ostream& out, const DistanceField& field) {
    out << "x,y,d\n";
    const Grid2D& g = field.grid;
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            const Point2 p = g.node(i, j);
            const int idx = g.index(i, j);
            const double v =
                field.inside[idx] && std::isfinite(field.values[idx]) ? field.values[idx] : 0.0;
            out << format_number(p.x) << ',' << format_number(p.y) << ',' << format_number(v)
                << '\n';
        }
    }
}

// ---------------------------------------------------------------------------
// SVG plot
// ---------------------------------------------------------------------------

namespace {

void svg_shape(std::ostream& out, const Obstacle& obs) {
    constexpr const char* style = "fill=\"#d0d7de\" stroke=\"#57606a\" stroke-width=\"0.004\"";
    if (const Union* u = std::get_if<Union>(&obs.shape)) {
        for (const Obstacle& m : u->members) svg_shape(out, m);
        return;
    }
    if (const Circle* c = std::get_if<Circle>(&obs.shape)) {
        out << "  <circle cx=\"" << c->center.x << "\" cy=\"" << -c->center.y << "\" r=\""
            << c->radius << "\" " << style << "/>\n";
    } else if (const Square* s = std::get_if<Square>(&obs.shape)) {
        const double m = 0.5 * s->side;
        out << "  <rect x=\"" << s->center.x - m << "\" y=\"" << -s->center.y - m
            << "\" width=\"" << s->side << "\" height=\"" << s->side << "\" transform=\"rotate("
            << to_degrees(-s->rotation) << ' ' << s->center.x << ' ' << -s->center.y << ")\" "
            << style << "/>\n";
    } else if (const Ellipse* e = std::get_if<Ellipse>(&obs.shape)) {
        out << "  <ellipse cx=\"" << e->center.x << "\" cy=\"" << -e->center.y << "\" rx=\""
            << e->a << "\" ry=\"" << e->b << "\" transform=\"rotate("
            << to_degrees(-e->rotation) << ' ' << e->center.x << ' ' << -e->center.y << ")\" "
            << style << "/>\n";
    }
}

}  // namespace

void emit_svg(std::ostream& out, const Scenario& sc, const std::vector<Point2>& samples) {
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"-0.2 -0.2 1.0 1.3\" "
           "width=\"500\" height=\"650\">\n";
    out << "  <rect x=\"-0.2\" y=\"-0.2\" width=\"1.0\" height=\"1.3\" fill=\"white\"/>\n";
    svg_shape(out, sc.obstacles);

    out << "  <polyline points=\"";
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (i) out << ' ';
        out << samples[i].x << ',' << -samples[i].y;
    }
    out << "\" fill=\"none\" stroke=\"#0969da\" stroke-width=\"0.008\"/>\n";

    const double cx = sc.target.x, cy = -sc.target.y, r = 0.015;
    out << "  <line x1=\"" << cx - r << "\" y1=\"" << cy - r << "\" x2=\"" << cx + r
        << "\" y2=\"" << cy + r << "\" stroke=\"#cf222e\" stroke-width=\"0.006\"/>\n";
    out << "  <line x1=\"" << cx - r << "\" y1=\"" << cy + r << "\" x2=\"" << cx + r
        << "\" y2=\"" << cy - r << "\" stroke=\"#cf222e\" stroke-width=\"0.006\"/>\n";
    out << "  <circle cx=\"0\" cy=\"0\" r=\"0.01\" fill=\"#24292f\"/>\n";
    out << "</svg>\n";
}

// ---------------------------------------------------------------------------
// CLI
// ---------------------------------------------------------------------------

namespace {

void write_file(const std::filesystem::path& path,
                const std::function<void(std::ostream&)>& writer) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path.string());
    writer(out);
    if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace

void write_run_artifacts(const std::filesystem::path& dir, const LoadedScenario& ls,
                         const OptimizationReport& report, bool with_svg) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory " + dir.string());

    const Scenario& sc = ls.scenario;
    const std::vector<Point2> pts = sample_configuration(sc, report.u_star);

    write_file(dir / "controls.csv",
               [&](std::ostream& o) { write_controls_csv(o, report.u_star); });
    write_file(dir / "configuration.csv", [&](std::ostream& o) {
        write_configuration_csv(o, sample_arclengths(sc), pts);
    });
    write_file(dir / "trace.csv",
               [&](std::ostream& o) { write_trace_csv(o, continuation_trace(report)); });
    if (sc.model == ArmModel::soft) {
        const SoftCurve curve = forward_curve(sc.soft, report.u_star);
        write_file(dir / "curvature.csv", [&](std::ostream& o) {
            write_curvature_csv(o, curvature_profile(curve, sc.soft));
        });
    }
    if (with_svg) {
        write_file(dir / "plot.svg", [&](std::ostream& o) { emit_svg(o, sc, pts); });
    }
}

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"equilibrium shape planning for planar hyper-redundant and soft manipulators"};
    app.require_subcommand(1);

    std::string scenario_path;
    std::string out_dir = "out";
    bool with_svg = false;
    bool verbose = false;

    CLI::App* solve = app.add_subcommand("solve", "optimize a scenario and write CSV artifacts");
    solve->add_option("scenario", scenario_path, "scenario file")->required();
    solve->add_option("--out", out_dir, "output directory");
    solve->add_flag("--svg", with_svg, "also write plot.svg");
    solve->add_flag("--verbose", verbose, "continuation progress on stderr");

    double grid_h = 0.0;
    CLI::App* distfield =
        app.add_subcommand("distfield", "rasterize + fast-march the scenario obstacles");
    distfield->add_option("scenario", scenario_path, "scenario file")->required();
    distfield->add_option("--grid", grid_h, "grid spacing (default: scenario grid-h)");
    distfield->add_option("--out", out_dir, "output directory");

    int trials = 100;
    double fd_step = 1e-6;
    std::uint64_t seed = 12345;
    double tol = 1e-5;
    CLI::App* checkgrad =
        app.add_subcommand("check-grad", "compare the analytic gradient to central differences");
    checkgrad->add_option("scenario", scenario_path, "scenario file")->required();
    checkgrad->add_option("--trials", trials, "number of random controls");
    checkgrad->add_option("--step", fd_step, "finite-difference step");
    checkgrad->add_option("--seed", seed, "RNG seed");
    checkgrad->add_option("--tol", tol, "pass threshold on the max relative error");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        const LoadedScenario ls = load_scenario(scenario_path);
        for (const std::string& note : ls.notes) {
            std::fprintf(stderr, "note: %s\n", note.c_str());
        }

        if (solve->parsed()) {
            GdSettings settings = ls.settings;
            settings.verbose = settings.verbose || verbose;
            const std::vector<double> u0(ls.scenario.control_size(), 0.0);
            const OptimizationReport report = descend(ls.scenario, settings, u0);
            write_run_artifacts(out_dir, ls, report, with_svg);
            std::printf("scenario=%s rounds=%zu tip_error=%s max_penetration=%s cost=%s%s\n",
                        ls.name.c_str(), report.rounds.size(),
                        format_number(report.tip_error).c_str(),
                        format_number(report.max_penetration).c_str(),
                        format_number(report.final_breakdown.total).c_str(),
                        report.converged ? "" : " (iteration bound hit)");
            return 0;
        }
        if (distfield->parsed()) {
            const double h = grid_h > 0.0 ? grid_h : ls.grid_h;
            const DistanceField field = solve_depth_field(ls.scenario.obstacles, h);
            std::error_code ec;
            std::filesystem::create_directories(out_dir, ec);
            if (ec) throw IoError("cannot create output directory " + out_dir);
            write_file(std::filesystem::path(out_dir) / "field.csv",
                       [&](std::ostream& o) { write_field_csv(o, field); });
            std::printf("field: %dx%d nodes, h=%s\n", field.grid.nx, field.grid.ny,
                        format_number(field.grid.spacing).c_str());
            return 0;
        }
        if (checkgrad->parsed()) {
            const GradientCheckReport report =
                check_gradients(ls.scenario, trials, fd_step, seed);
            std::printf("max relative error = %s over %d trials (%d components skipped)\n",
                        format_number(report.max_relative_error).c_str(), report.trials,
                        report.skipped_components);
            return report.max_relative_error <= tol ? 0 : 1;
        }
    } catch (const IoError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}

}  // namespace armplan::io
