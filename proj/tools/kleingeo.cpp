// kleingeo: builds projective and affine geometries over small finite fields
// as explicit permutation groups and runs exhaustive verification campaigns
// (normalizers vs semilinear groups, h-set collinearity, the exceptional
// automorphism of S_6). Reports go to stdout as human summaries and to
// --out as deterministic JSON documents (schema/report.schema.json).

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "klein/klein.hpp"

namespace {

using klein::json;

struct GlobalOptions {
    std::string out_path;
    bool timings = false;
    klein::CampaignOptions campaign;
};

json envelope(const std::string& command, json arguments) {
    return json{{"tool", "kleingeo"}, {"command", command}, {"arguments", std::move(arguments)}};
}

void emit(const GlobalOptions& opt, const json& report) {
    if (opt.out_path.empty()) return;
    std::ofstream out(opt.out_path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot open output path: " + opt.out_path);
    out << klein::render(report);
}

const char* verdict(bool pass) { return pass ? "PASS" : "FAIL"; }

// ---------------------------------------------------------------- field ---

bool run_field(const GlobalOptions& opt, int p, int k) {
    auto field = klein::Field::make(p, k, opt.campaign.field_order_cap);
    const int q = field.order();

    json auts = json::array();
    for (const auto& h : field.automorphisms()) {
        std::vector<int> table(q);
        for (int x = 0; x < q; ++x) table[x] = field.apply(h, x);
        auts.push_back(json{{"frobenius_exponent", h.j}, {"table", table}});
    }
    json add(json::array()), mul(json::array()), neg(json::array()), inv(json::array());
    for (int a = 0; a < q; ++a) {
        json add_row(json::array()), mul_row(json::array());
        for (int b = 0; b < q; ++b) {
            add_row.push_back(field.add(a, b));
            mul_row.push_back(field.mul(a, b));
        }
        add.push_back(std::move(add_row));
        mul.push_back(std::move(mul_row));
        neg.push_back(field.neg(a));
        inv.push_back(a == 0 ? -1 : field.inv(a));
    }
    json report = envelope("field", {{"p", p}, {"k", k}});
    report["field"] = klein::to_json(field);
    report["automorphisms"] = std::move(auts);
    report["add_table"] = std::move(add);
    report["mul_table"] = std::move(mul);
    report["negation_table"] = std::move(neg);
    report["inverse_table"] = std::move(inv);
    report["pass"] = true;
    emit(opt, report);

    std::cout << "[field] GF(" << q << ") = GF(" << p << "^" << k << "), modulus coefficients ";
    std::cout << json(field.modulus()).dump() << "\n";
    std::cout << "  " << field.automorphisms().size()
              << " automorphism(s), all verified against every element pair\n";
    return true;
}

// ---------------------------------------------------------------- space ---

bool run_space(const GlobalOptions& opt, int p, int k, int n) {
    auto field = klein::Field::make(p, k, opt.campaign.field_order_cap);
    auto space = klein::ProjSpace::enumerate(field, n, opt.campaign.point_cap);

    json points = json::array();
    for (int id = 0; id < space.size(); ++id) points.push_back(space.point(id).coords);
    json report = envelope("space", {{"p", p}, {"k", k}, {"n", n}});
    report["space"] = klein::space_ref(space);
    report["field"] = klein::to_json(field);
    report["point_count"] = space.size();
    report["points"] = std::move(points);
    if (n >= 1) {
        auto patch = klein::AffinePatch::of(space);
        report["affine_count"] = patch.affine_count();
        report["infinity_count"] = static_cast<int>(patch.infinity_ids().size());
    }
    report["pass"] = true;
    emit(opt, report);

    std::cout << "[space] " << space.describe() << ": " << space.size() << " points";
    if (n >= 1) {
        auto patch = klein::AffinePatch::of(space);
        std::cout << " (" << patch.affine_count() << " affine + " << patch.infinity_ids().size()
                  << " at infinity)";
    }
    std::cout << "\n";
    return true;
}

// ---------------------------------------------------------------- group ---

bool run_group(const GlobalOptions& opt, int p, int k, int n, const std::string& kind) {
    auto field = klein::Field::make(p, k, opt.campaign.field_order_cap);
    json report = envelope("group", {{"p", p}, {"k", k}, {"n", n}, {"kind", kind}});

    std::string acting_on;
    std::optional<klein::PermGroup> group;
    if (kind == "pgl" || kind == "pgammal") {
        auto space = klein::ProjSpace::enumerate(field, n, opt.campaign.point_cap);
        group = kind == "pgl"
                    ? klein::pgl_group(space, opt.campaign.matrix_cap, opt.campaign.order_cap)
                    : klein::pgammal_group(space, opt.campaign.matrix_cap, opt.campaign.order_cap);
        acting_on = space.describe();
    } else {
        auto geom = klein::affine_geometry(field, n, opt.campaign);
        group = geom.group;
        acting_on = "A_" + std::to_string(n) + "(F_" + std::to_string(field.order()) + ")";
    }
    report["group"] = klein::to_json(*group);
    // the group is defined by (n+1)x(n+1) matrices but named by the dimension
    // n of the space it acts on
    report["notation"] = json{{"acting_on", acting_on}, {"matrix_size", n + 1}};
    report["pass"] = true;
    emit(opt, report);

    std::cout << "[group] " << kind << " on " << acting_on << ": order " << group->order()
              << ", degree " << group->degree() << ", " << group->generators().size()
              << " generator(s); matrices are " << (n + 1) << "x" << (n + 1) << "\n";
    return true;
}

// --------------------------------------------------------------- lemma1 ---

struct TripleCensus {
    std::uint64_t checked = 0;
    std::uint64_t agreements = 0;
    std::uint64_t collinear = 0;
    std::vector<std::array<int, 3>> disagreements;
};

TripleCensus collinearity_census(const klein::KleinGeometry& geom) {
    TripleCensus census;
    const int m = geom.point_count();
    for (int a = 0; a < m; ++a)
        for (int b = a + 1; b < m; ++b)
            for (int c = b + 1; c < m; ++c) {
                const bool via_rank = geom.space.collinear_rank(a, b, c);
                const bool via_h = klein::collinear_via_h_sets(geom, a, b, c);
                ++census.checked;
                if (via_rank == via_h)
                    ++census.agreements;
                else
                    census.disagreements.push_back({a, b, c});
                if (via_rank) ++census.collinear;
            }
    return census;
}

bool run_lemma1(const GlobalOptions& opt, int p, int k, int n) {
    auto field = klein::Field::make(p, k, opt.campaign.field_order_cap);
    auto geom = klein::projective_geometry(field, n, opt.campaign);
    auto census = collinearity_census(geom);

    json disagreements = json::array();
    for (const auto& t : census.disagreements) disagreements.push_back({t[0], t[1], t[2]});
    json report = envelope("lemma1", {{"p", p}, {"k", k}, {"n", n}});
    report["space"] = klein::space_ref(geom.space);
    report["triples_checked"] = census.checked;
    report["agreements"] = census.agreements;
    report["disagreements"] = std::move(disagreements);
    report["collinear_triples"] = census.collinear;
    const bool pass = census.disagreements.empty();
    report["pass"] = pass;
    emit(opt, report);

    std::cout << "[lemma1] " << geom.space.describe() << ": " << census.checked
              << " triples checked, agreement " << census.agreements << "/" << census.checked
              << " with the rank oracle, " << census.collinear << " collinear -> "
              << verdict(pass) << "\n";
    return pass;
}

// ------------------------------------------------------------- theorem1 ---

void print_verification(const klein::VerificationReport& r) {
    std::cout << "  orders: structural " << r.structural_order << ", closure " << r.closure_order;
    if (r.normalizer_order > 0) std::cout << ", normalizer " << r.normalizer_order;
    std::cout << "\n  flags: structural_in_normalizer=" << r.structural_in_normalizer
              << " closure_in_normalizer=" << r.closure_in_normalizer
              << " normalizer_in_closure=" << r.normalizer_in_closure;
    if (r.strategy == "sampled")
        std::cout << " (samples=" << r.samples << ", seed=" << r.seed << ")";
    if (r.excluded_case) std::cout << " [excluded case: reported, not asserted]";
    std::cout << "\n  " << verdict(r.pass()) << " (" << r.duration_ms << " ms)\n";
}

bool run_theorem1(const GlobalOptions& opt, int p, int k, int n, const std::string& strategy) {
    auto field = klein::Field::make(p, k, opt.campaign.field_order_cap);
    auto geom = klein::projective_geometry(field, n, opt.campaign);
    auto r = klein::automorphism_group(
        geom, strategy == "sampled" ? klein::Strategy::sampled : klein::Strategy::brute,
        opt.campaign);

    json report = envelope("theorem1", {{"p", p}, {"k", k}, {"n", n}, {"strategy", strategy}});
    report["space"] = klein::space_ref(geom.space);
    report["report"] = klein::to_json(r, opt.timings);
    report["notation"] = json{{"acting_on", geom.space.describe()}, {"matrix_size", n + 1}};
    report["pass"] = r.pass();
    emit(opt, report);

    std::cout << "[theorem1] " << r.geometry << " strategy=" << r.strategy << "\n";
    print_verification(r);
    return r.pass();
}

// --------------------------------------------------------------- affine ---

bool run_affine(const GlobalOptions& opt, int p, int k, int n) {
    auto field = klein::Field::make(p, k, opt.campaign.field_order_cap);
    auto r = klein::affine_automorphism_check(field, n, opt.campaign);

    json report = envelope("affine", {{"p", p}, {"k", k}, {"n", n}});
    report["report"] = klein::to_json(r, opt.timings);
    report["pass"] = r.pass();
    emit(opt, report);

    std::cout << "[affine] " << r.geometry << "\n";
    print_verification(r);
    return r.pass();
}

// -------------------------------------------------------------- s6 outer --

bool run_s6_outer(const GlobalOptions& opt) {
    auto r = klein::build_outer_automorphism(klein::ConjugateLabelOrder::first_encounter,
                                             opt.campaign.jobs);
    json report = envelope("s6-outer", json::object());
    report["report"] = klein::to_json(r);
    report["pass"] = r.pass();
    emit(opt, report);

    std::cout << "[s6-outer] conjugates: " << r.conjugates.size()
              << ", table entries: " << r.table.size() << "\n"
              << "  flags: homomorphism=" << r.is_homomorphism << " bijective=" << r.is_bijective
              << " fixes_stabilizer_image=" << r.fixes_stabilizer_image
              << " outer(no-fixed-point)=" << r.is_outer_no_fixed_point
              << " outer(exhaustive)=" << r.is_outer_exhaustive << "\n"
              << "  transposition image cycle type: "
              << json(r.transposition_image_cycle_type).dump() << "\n"
              << "  " << verdict(r.pass()) << "\n";
    return r.pass();
}

// ------------------------------------------------------------------ all ---

json scalar_action_sweep(const GlobalOptions& opt, bool& pass) {
    json out = json::array();
    for (auto [p, k] : std::vector<std::pair<int, int>>{{2, 2}, {5, 1}, {7, 1}, {2, 3}, {3, 2}}) {
        auto field = klein::Field::make(p, k);
        auto space = klein::ProjSpace::enumerate(field, 1);
        auto pgammal = klein::pgammal_group(space, opt.campaign.matrix_cap);
        auto pgl = klein::pgl_group(space, opt.campaign.matrix_cap);

        std::vector<std::vector<int>> frobenius_tables;
        for (const auto& h : field.automorphisms()) {
            std::vector<int> t(field.order());
            for (int x = 0; x < field.order(); ++x) t[x] = field.apply(h, x);
            frobenius_tables.push_back(std::move(t));
        }

        bool all_flags = true, all_frobenius = true;
        for (const auto& g : pgammal.elements()) {
            auto h = klein::extract_field_aut(space, g);
            if (!klein::check_scalar_action(space, g, h).all()) all_flags = false;
            if (std::find(frobenius_tables.begin(), frobenius_tables.end(), h) ==
                frobenius_tables.end())
                all_frobenius = false;
        }

        json row{{"q", field.order()},
                 {"semilinear_order", pgammal.order()},
                 {"all_flags_true", all_flags},
                 {"frobenius_powers_only", all_frobenius}};
        const std::uint64_t total = klein::factorial(space.size());
        if (pgammal.order() == total) {
            // the semilinear group exhausts the symmetric group, so no
            // non-normalizing bijection exists
            row["witness_exists"] = false;
        } else {
            std::uint64_t rank = 0;
            while (pgammal.contains(klein::nth_permutation(space.size(), rank))) ++rank;
            auto phi = klein::nth_permutation(space.size(), rank);
            auto flags = klein::check_scalar_action(space, phi, klein::extract_field_aut(space, phi));
            row["witness_exists"] = true;
            row["witness_rank"] = rank;
            row["witness_normalizes"] = klein::normalizes(phi, pgl);
            row["witness_some_flag_false"] = !flags.all();
            if (flags.all() || klein::normalizes(phi, pgl)) all_flags = false;
        }
        if (!all_flags || !all_frobenius) pass = false;
        out.push_back(std::move(row));
    }
    return out;
}

json collineation_campaign(const GlobalOptions& opt, bool& pass) {
    auto field = klein::Field::make(2, 1);
    auto space = klein::ProjSpace::enumerate(field, 2);
    auto pgl = klein::pgl_group(space, opt.campaign.matrix_cap);
    auto collineations = klein::all_collineations_by_frames(space);

    bool equal = collineations.size() == pgl.order();
    for (std::size_t i = 0; equal && i < collineations.size(); ++i)
        if (!pgl.contains(collineations[i])) equal = false;
    bool all_decompose = true;
    for (const auto& g : collineations)
        if (!klein::decompose_staudt(space, g).has_value()) all_decompose = false;

    if (!equal || !all_decompose) pass = false;
    return json{{"space", klein::space_ref(space)},
                {"collineation_count", collineations.size()},
                {"equals_pgl", equal},
                {"all_decompose", all_decompose}};
}

bool run_all(const GlobalOptions& opt, bool quick) {
    bool pass = true;
    json campaigns = json::array();
    const auto stamp = [&](const std::string& name, const json& payload, bool ok) {
        json row{{"name", name}};
        row["report"] = payload;
        row["pass"] = ok;
        campaigns.push_back(std::move(row));
        std::cout << "[all] " << name << ": " << verdict(ok) << "\n";
        if (!ok) pass = false;
    };

    {
        auto r = klein::build_outer_automorphism(klein::ConjugateLabelOrder::first_encounter,
                                                 opt.campaign.jobs);
        stamp("s6_outer", klein::to_json(r), r.pass());
    }

    struct Instance {
        int p, k, n;
    };
    std::vector<Instance> brute = {{5, 1, 1}, {2, 2, 1}, {7, 1, 1}, {2, 1, 2}, {2, 3, 1}};
    if (!quick) brute.push_back({3, 2, 1});
    for (auto [p, k, n] : brute) {
        auto geom = klein::projective_geometry(klein::Field::make(p, k), n, opt.campaign);
        auto r = klein::automorphism_group(geom, klein::Strategy::brute, opt.campaign);
        stamp("theorem1_brute " + r.geometry, klein::to_json(r, opt.timings), r.pass());
    }
    {
        klein::CampaignOptions sampled = opt.campaign;
        if (quick) sampled.samples = std::min<std::uint64_t>(sampled.samples, 10000);
        auto geom = klein::projective_geometry(klein::Field::make(2, 2), 2, sampled);
        auto r = klein::automorphism_group(geom, klein::Strategy::sampled, sampled);
        stamp("theorem1_sampled " + r.geometry, klein::to_json(r, opt.timings), r.pass());
    }
    for (auto [p, k, n] : std::vector<Instance>{{2, 1, 2}, {3, 1, 2}, {5, 1, 1}}) {
        auto geom = klein::projective_geometry(klein::Field::make(p, k), n, opt.campaign);
        auto census = collinearity_census(geom);
        const bool ok = census.disagreements.empty();
        stamp("lemma1 " + geom.space.describe(),
              json{{"triples_checked", census.checked},
                   {"agreements", census.agreements},
                   {"collinear_triples", census.collinear}},
              ok);
    }
    {
        bool ok = true;
        json sweep = scalar_action_sweep(opt, ok);
        stamp("scalar_action_sweep", sweep, ok);
    }
    for (auto [p, k, n] : std::vector<Instance>{{2, 2, 1}, {3, 1, 2}, {5, 1, 1}, {2, 1, 1}, {2, 1, 2}}) {
        auto r = klein::affine_automorphism_check(klein::Field::make(p, k), n, opt.campaign);
        stamp("affine " + r.geometry, klein::to_json(r, opt.timings), r.pass());
    }
    {
        bool ok = true;
        json payload = collineation_campaign(opt, ok);
        stamp("collineations P_2(F_2)", payload, ok);
    }

    json report = envelope("all", {{"quick", quick}});
    report["campaigns"] = std::move(campaigns);
    report["pass"] = pass;
    emit(opt, report);
    std::cout << "[all] overall: " << verdict(pass) << "\n";
    return pass;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Klein geometries over finite fields: exhaustive verification campaigns"};
    app.require_subcommand(1);

    GlobalOptions opt;
    app.add_option("--out", opt.out_path, "write the JSON report to this path")->capture_default_str();
    app.add_flag("--timings", opt.timings, "include duration_ms in JSON reports (breaks byte-stability)");
    app.add_option("--jobs", opt.campaign.jobs, "workers for partitioned scans; results are identical to --jobs 1");
    app.add_option("--seed", opt.campaign.seed, "seed for the sampled strategy");
    app.add_option("--samples", opt.campaign.samples, "sample count for the sampled strategy");
    app.add_option("--max-order", opt.campaign.order_cap, "group enumeration cap");
    app.add_option("--max-factorial", opt.campaign.factorial_cap, "cap on m! for normalizer scans");
    app.add_option("--max-matrices", opt.campaign.matrix_cap, "cap on matrix enumeration");
    app.fallthrough();

    int p = 0, k = 1, n = 1;
    std::string kind = "pgl", strategy = "brute";
    bool quick = false;

    auto* field_cmd = app.add_subcommand("field", "print arithmetic and automorphism tables of GF(p^k)");
    field_cmd->add_option("p", p, "prime characteristic")->required();
    field_cmd->add_option("k", k, "extension degree")->required();

    auto* space_cmd = app.add_subcommand("space", "point census of P_n over GF(p^k)");
    space_cmd->add_option("p", p)->required();
    space_cmd->add_option("k", k)->required();
    space_cmd->add_option("n", n)->required();

    auto* group_cmd = app.add_subcommand("group", "orders and generators of pgl / pgammal / aff");
    group_cmd->add_option("p", p)->required();
    group_cmd->add_option("k", k)->required();
    group_cmd->add_option("n", n)->required();
    group_cmd->add_option("kind", kind, "pgl | pgammal | aff")
        ->required()
        ->check(CLI::IsMember({"pgl", "pgammal", "aff"}));

    auto* lemma_cmd = app.add_subcommand("lemma1", "exhaustive h-set collinearity check against the rank oracle");
    lemma_cmd->add_option("p", p)->required();
    lemma_cmd->add_option("k", k)->required();
    lemma_cmd->add_option("n", n)->required();

    auto* thm_cmd = app.add_subcommand("theorem1", "normalizer of the homography group vs the semilinear group");
    thm_cmd->add_option("p", p)->required();
    thm_cmd->add_option("k", k)->required();
    thm_cmd->add_option("n", n)->required();
    thm_cmd->add_option("--strategy", strategy, "brute | sampled")
        ->check(CLI::IsMember({"brute", "sampled"}))
        ->capture_default_str();

    auto* affine_cmd = app.add_subcommand("affine", "normalizer of the affine group vs restricted semilinear maps");
    affine_cmd->add_option("p", p)->required();
    affine_cmd->add_option("k", k)->required();
    affine_cmd->add_option("n", n)->required();

    auto* s6_cmd = app.add_subcommand("s6-outer", "construct and verify the exceptional automorphism of S_6");

    auto* all_cmd = app.add_subcommand("all", "run the full verification battery");
    all_cmd->add_flag("--quick", quick, "skip the slowest brute instance and shrink sampling");

    try {
        app.parse(argc, argv);
        bool pass = false;
        if (field_cmd->parsed()) pass = run_field(opt, p, k);
        else if (space_cmd->parsed()) pass = run_space(opt, p, k, n);
        else if (group_cmd->parsed()) pass = run_group(opt, p, k, n, kind);
        else if (lemma_cmd->parsed()) pass = run_lemma1(opt, p, k, n);
        else if (thm_cmd->parsed()) pass = run_theorem1(opt, p, k, n, strategy);
        else if (affine_cmd->parsed()) pass = run_affine(opt, p, k, n);
        else if (s6_cmd->parsed()) pass = run_s6_outer(opt);
        else if (all_cmd->parsed()) pass = run_all(opt, quick);
        return pass ? 0 : 1;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const klein::cap_exceeded& e) {
        std::cerr << "cap exceeded: " << e.what() << " (cap " << e.cap() << ", reached "
                  << e.partial() << ")\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
