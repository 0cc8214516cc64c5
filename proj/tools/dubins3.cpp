// Command-line front end: single-instance solves, the randomized benchmark
// harness, tour construction and post-processing, and polyline emission for
// plotting.

#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dubins3/bench.hpp"
#include "dubins3/io.hpp"
#include "dubins3/three_point.hpp"
#include "dubins3/tour.hpp"

namespace {

using namespace dubins3;

std::string polyline_csv(const ThreePointInstance& inst, const ThreePointSolution& sol,
                         double step) {
    const Pose mid_pose{inst.mid, sol.heading};
    auto pts = sample_path(sol.first_leg, inst.start, step);
    const auto second = sample_path(sol.second_leg, mid_pose, step);
    pts.insert(pts.end(), second.begin() + 1, second.end());
    std::ostringstream out;
    out << "x,y,theta\n" << std::setprecision(12);
    for (const Pose& p : pts) out << p.position.x << ',' << p.position.y << ',' << p.heading << '\n';
    return out.str();
}

void print_leg(std::ostream& out, const char* name, const DubinsPath& leg) {
    out << name << ": " << leg.word_str() << "  segments " << leg.segment_lengths[0] << ' '
        << leg.segment_lengths[1] << ' ' << leg.segment_lengths[2] << "  length "
        << leg.total_length << '\n';
}

int cmd_solve3(const std::string& input, int disc_only, double sample_step,
               const std::string& out_path) {
    const ThreePointInstance inst = io::instance_from_json(io::read_file(input));
    std::ostream& out = std::cout;
    out << std::setprecision(12);

    ThreePointSolution sol;
    if (disc_only > 0) {
        const HeadingLength base = discretize_heading(inst, disc_only);
        sol.heading = base.heading;
        sol.total_length = base.total_length;
        sol.first_leg = solve_pair(inst.start, {inst.mid, base.heading}, inst.rmin);
        sol.second_leg = solve_pair({inst.mid, base.heading}, inst.end, inst.rmin);
        sol.method = SolveMethod::discretized_fallback;
        out << "method: disc" << disc_only << '\n';
    } else {
        sol = solve_three_point(inst);
        switch (sol.method) {
            case SolveMethod::approx: out << "method: closed-form\n"; break;
            case SolveMethod::iterative: out << "method: iterative\n"; break;
            case SolveMethod::discretized_fallback: out << "method: fallback\n"; break;
        }
    }
    out << "class: " << (sol.path_class ? sol.path_class->word() : std::string("none")) << '\n'
        << "heading: " << sol.heading << '\n'
        << "total_length: " << sol.total_length << '\n';
    print_leg(out, "leg1", sol.first_leg);
    print_leg(out, "leg2", sol.second_leg);
    out << "iterations: " << sol.iterations << '\n';
    if (sol.path_class) {
        // Degenerate optima (straight segment through the waypoint) have no
        // inversive-geometry certificate; keep the report going.
        try {
            const auto res = residuals(inst, *sol.path_class, sol.heading);
            out << "residuals: r1 " << res.r1 << "  r2 " << res.r2 << "  r3 " << res.r3
                << "  max " << res.max_abs() << '\n';
        } catch (const std::exception& e) {
            out << "residuals: unavailable (" << e.what() << ")\n";
        }
    }

    if (sample_step > 0.0) {
        const std::string csv = polyline_csv(inst, sol, sample_step);
        if (out_path.empty())
            out << csv;
        else
            io::write_file(out_path, csv);
    }
    return 0;
}

int cmd_bench(const bench::BenchOptions& opts, const std::string& out_path) {
    const bench::BenchResult res = bench::run(opts);
    const std::string csv = bench::to_csv(res.records);
    if (out_path.empty()) {
        std::cout << csv;
        std::cerr << bench::format_summary(res.summary);
    } else {
        io::write_file(out_path, csv);
        std::cout << bench::format_summary(res.summary);
    }
    return 0;
}

int cmd_tour(const std::string& points_path, const std::string& in_tour_path, double rmin,
             int construct_k, bool refine, std::uint64_t seed, int fallback_k,
             const std::string& out_path) {
    Tour tour;
    if (!in_tour_path.empty()) {
        tour = io::tour_from_json(io::read_file(in_tour_path));
    } else {
        std::istringstream pts_stream(io::read_file(points_path));
        const auto pts = io::points_from_csv(pts_stream);
        tour = construct_initial_tour(pts, rmin, construct_k);
    }
    const double before = tour.total_length;

    RefineConfig cfg;
    cfg.rng_seed = seed;
    cfg.three_point_opts.fallback_k = fallback_k;
    if (refine) tour = post_process(tour, cfg);

    std::ostream& report = out_path.empty() ? std::cerr : std::cout;
    report << std::setprecision(12) << "poses: " << tour.poses.size() << '\n'
           << "input_length: " << before << '\n'
           << "output_length: " << tour.total_length << '\n';
    const std::string json = io::tour_to_json(tour);
    if (out_path.empty())
        std::cout << json;
    else
        io::write_file(out_path, json);
    return 0;
}

int cmd_sample(const std::string& input, double step, const std::string& out_path) {
    const ThreePointInstance inst = io::instance_from_json(io::read_file(input));
    const auto sol = solve_three_point(inst);
    const std::string csv = polyline_csv(inst, sol, step);
    if (out_path.empty())
        std::cout << csv;
    else
        io::write_file(out_path, csv);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dubins paths through three points: solver, benchmark, tours"};
    app.require_subcommand(1);

    std::string s3_input, s3_out;
    int s3_disc_only = 0;
    double s3_sample = 0.0;
    auto* s3 = app.add_subcommand("solve3", "Solve one three-point instance");
    s3->add_option("input", s3_input, "Instance JSON file")->required();
    s3->add_option("--disc-only", s3_disc_only, "Skip the solver; report the k-grid baseline");
    s3->add_option("--sample", s3_sample, "Also emit a polyline sampled at this arc step");
    s3->add_option("--out", s3_out, "Write the polyline CSV here instead of stdout");

    bench::BenchOptions bopts;
    std::string b_out;
    auto* b = app.add_subcommand("bench", "Random-instance benchmark against discretization");
    b->add_option("--n", bopts.n, "Instance count");
    b->add_option("--env-size", bopts.env_size, "Square environment side length");
    b->add_option("--min-dist", bopts.min_dist, "Minimum pairwise point distance");
    b->add_option("--rmin", bopts.rmin, "Turning radius");
    b->add_option("--disc", bopts.disc_k, "Baseline discretization level");
    b->add_option("--seed", bopts.seed, "RNG seed");
    b->add_option("--time-reps", bopts.time_reps,
                  "Timing repeats per solve (median kept); 0 disables timing");
    b->add_option("--out", b_out, "Write the CSV here; summary then goes to stdout");

    std::string t_points, t_in_tour, t_out;
    double t_rmin = 1.0;
    int t_construct = 1;
    int t_fallback_k = 3600;
    bool t_refine = false;
    std::uint64_t t_seed = 0;
    auto* t = app.add_subcommand("tour", "Construct or ingest a tour, optionally post-process");
    auto* t_pts_opt = t->add_option("--points", t_points, "Points CSV file (x,y per line)");
    auto* t_in_opt = t->add_option("--in-tour", t_in_tour, "Existing tour JSON to ingest");
    t_pts_opt->excludes(t_in_opt);
    t->add_option("--rmin", t_rmin, "Turning radius for construction");
    t->add_option("--construct", t_construct, "Heading discretization for construction");
    t->add_flag("--refine", t_refine, "Run the post-processing loop");
    t->add_option("--seed", t_seed, "Post-processing RNG seed");
    t->add_option("--fallback-k", t_fallback_k,
                  "Fallback grid for close-waypoint solves during refinement");
    t->add_option("--out", t_out, "Write the tour JSON here; report then goes to stdout");

    std::string sm_input, sm_out;
    double sm_step = 0.1;
    auto* sm = app.add_subcommand("sample", "Emit the solved path as an x,y,theta polyline");
    sm->add_option("input", sm_input, "Instance JSON file")->required();
    sm->add_option("--step", sm_step, "Arc-length sampling step");
    sm->add_option("--out", sm_out, "Write the CSV here instead of stdout");

    try {
        app.parse(argc, argv);
        if (s3->parsed()) return cmd_solve3(s3_input, s3_disc_only, s3_sample, s3_out);
        if (b->parsed()) return cmd_bench(bopts, b_out);
        if (t->parsed()) {
            if (t_points.empty() && t_in_tour.empty())
                throw std::runtime_error("tour: need --points or --in-tour");
            return cmd_tour(t_points, t_in_tour, t_rmin, t_construct, t_refine, t_seed,
                            t_fallback_k, t_out);
        }
        if (sm->parsed()) return cmd_sample(sm_input, sm_step, sm_out);
        return 2;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
