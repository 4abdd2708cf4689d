// conic-codes: exact constructions and verifications for the conic geometry
// of PG(2,q), its incidence codes, and the PSL(2,q) block machinery.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "conic/blocks.hpp"
#include "conic/brauer.hpp"
#include "conic/chartable.hpp"
#include "conic/field.hpp"
#include "conic/group.hpp"
#include "conic/incidence.hpp"
#include "conic/plane.hpp"
#include "conic/report.hpp"

using nlohmann::json;
using namespace conic;

namespace {

struct CommonOpts {
    int64_t q = 0;
    int64_t p = 0;
    int e = 1;
    std::string poly;
    std::string out;
    bool no_timestamp = false;
    int threads = 0;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool need_q = true) {
    auto* qopt = cmd->add_option("--q", o.q, "field order q = p^e (odd prime power)");
    cmd->add_option("--p", o.p, "characteristic (alternative to --q)");
    cmd->add_option("--e", o.e, "extension degree (with --p)");
    cmd->add_option("--poly", o.poly,
                    "modulus override: ascending coefficients c0,c1,...,ce");
    cmd->add_option("--out", o.out, "write output to this path instead of stdout");
    cmd->add_flag("--no-timestamp", o.no_timestamp, "omit timing fields from reports");
    cmd->add_option("--threads", o.threads, "cap worker threads (default: all cores)");
    if (need_q) qopt->check(CLI::PositiveNumber);
}

std::vector<int64_t> parse_poly(const std::string& s) {
    std::vector<int64_t> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stoll(tok));
    return out;
}

std::shared_ptr<const PlaneCtx> make_plane(const CommonOpts& o) {
    if (o.threads > 0) setenv("CONIC_CODES_THREADS", std::to_string(o.threads).c_str(), 1);
    std::vector<int64_t> poly;
    const std::vector<int64_t>* pp = nullptr;
    if (!o.poly.empty()) {
        poly = parse_poly(o.poly);
        pp = &poly;
    }
    FieldCtx F = (o.q > 0) ? FieldCtx::from_order(o.q, pp) : FieldCtx::make(o.p, o.e, pp);
    return std::make_shared<PlaneCtx>(PlaneCtx::build(std::make_shared<FieldCtx>(std::move(F))));
}

void emit(const CommonOpts& o, const std::string& text) {
    if (o.out.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << "\n";
    } else {
        std::ofstream f(o.out);
        if (!f) throw std::invalid_argument("cannot open output path: " + o.out);
        f << text;
        if (!text.empty() && text.back() != '\n') f << "\n";
    }
}

json report_to_json(const Report& rep, const CommonOpts& o, int64_t q,
                    const std::string& suite) {
    json checks = json::array();
    for (const auto& c : rep.checks) {
        json jc{{"name", c.name}, {"expected", c.expected}, {"actual", c.actual},
                {"pass", c.pass}};
        if (!o.no_timestamp) jc["elapsed_ms"] = c.elapsed_ms;
        checks.push_back(jc);
    }
    json j{{"q", q}, {"suite", suite}, {"checks", checks}, {"pass", rep.pass()}};
    if (!o.no_timestamp) {
        auto now = std::chrono::system_clock::now();
        j["generated_at"] =
            int64_t(std::chrono::duration_cast<std::chrono::seconds>(now.time_since_epoch())
                        .count());
    }
    return j;
}

class Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();

public:
    double ms() {
        auto t1 = std::chrono::steady_clock::now();
        double v = std::chrono::duration<double, std::milli>(t1 - t0).count();
        t0 = t1;
        return v;
    }
};

// ---- verification suites ----

void run_geometry(const PlaneCtx& plane, Report& rep) {
    int64_t q = plane.q();
    Timer t;
    PlaneCensus c = plane.census();
    rep.add("external_points", q * (q + 1) / 2, c.external_points, t.ms());
    rep.add("internal_points", q * (q - 1) / 2, c.internal_points, t.ms());
    rep.add("absolute_points", q + 1, c.absolute_points, t.ms());
    rep.add("secant_lines", q * (q + 1) / 2, c.secant_lines, t.ms());
    rep.add("passant_lines", q * (q - 1) / 2, c.passant_lines, t.ms());
    rep.add("tangent_lines", q + 1, c.tangent_lines, t.ms());
    rep.add_flag("incidence_table_profiles", plane.verify_incidence_tables().ok, t.ms());

    bool involution = true, class_swap = true;
    for (int32_t P = 0; P < plane.n(); ++P) {
        int32_t L = plane.polarity_point(P);
        if (plane.polarity_line(L) != P) involution = false;
        PointClass pc = plane.point_class(P);
        LineClass lc = plane.line_class(L);
        bool match = (pc == PointClass::External && lc == LineClass::Secant) ||
                     (pc == PointClass::Internal && lc == LineClass::Passant) ||
                     (pc == PointClass::Absolute && lc == LineClass::Tangent);
        if (!match) class_swap = false;
    }
    rep.add_flag("polarity_involution", involution, t.ms());
    rep.add_flag("polarity_class_swap", class_swap, t.ms());

    // polar-meet classes: for non-conic P on a non-tangent line not equal to
    // the polar of P, the class of polar(P) ∩ l depends only on the classes
    // of P and l and on q mod 4.
    bool meet_ok = true;
    for (int32_t P = 0; P < plane.n() && meet_ok; ++P) {
        PointClass pc = plane.point_class(P);
        if (pc == PointClass::Absolute) continue;
        for (int32_t L : plane.lines_through_point(P)) {
            LineClass lc = plane.line_class(L);
            if (lc == LineClass::Tangent || plane.polarity_point(P) == L) continue;
            PointClass got = plane.perp_meet_class(P, L);
            bool flip = (q % 4 == 3);
            PointClass want;
            if (pc == PointClass::Internal)
                want = (lc == LineClass::Passant) == !flip ? PointClass::External
                                                           : PointClass::Internal;
            else
                want = (lc == LineClass::Passant) == !flip ? PointClass::Internal
                                                           : PointClass::External;
            if (got != want) { meet_ok = false; break; }
        }
    }
    rep.add_flag("polar_meet_classes", meet_ok, t.ms());
}

void run_matrix(const PlaneCtx& plane, Report& rep) {
    int64_t q = plane.q();
    const FieldCtx& F = plane.field();
    Timer t;

    BitMatrix B = build_B(plane);
    int64_t ne = B.rows();
    bool sym = (B == B.transpose());
    bool diag0 = true, weights = true;
    for (int64_t i = 0; i < ne; ++i) {
        if (B.get(i, i)) diag0 = false;
        if (B.row_weight(i) != (q - 1) / 2) weights = false;
    }
    rep.add_flag("B_symmetric", sym, t.ms());
    rep.add_flag("B_zero_diagonal", diag0, t.ms());
    rep.add_flag("B_row_weight", weights, t.ms());

    auto part = build_partition(plane);
    {
        // B equals the secant/external block up to the polarity row order
        const BitMatrix& a33 = part.block[2][2];
        bool perm_ok = true;
        auto ext = plane.external_points();
        for (int64_t i = 0; i < ne && perm_ok; ++i) {
            int32_t line = plane.polarity_point(ext[size_t(i)]);
            int64_t r = plane.secant_ordinal(line);
            for (int64_t j = 0; j < ne; ++j)
                if (B.get(i, j) != a33.get(r, j)) { perm_ok = false; break; }
        }
        rep.add_flag("B_matches_secant_external_block", perm_ok, t.ms());
        bool rowsum = true;
        for (int64_t r = 0; r < part.full.rows(); ++r)
            if (part.full.row_weight(r) != q + 1) rowsum = false;
        rep.add_flag("A_row_sums", rowsum, t.ms());
    }

    PowerIdentityReport pw = verify_power_identity(B);
    bool b3_expected = (q % 8 == 3 || q % 8 == 5);
    rep.add_flag("B5_eq_B", pw.b5_ok, t.ms());
    rep.add("B3_eq_B", b3_expected ? "true" : "false", pw.b3_eq ? "true" : "false", t.ms());

    rep.add("rank2_A", q * q + q, part.full.rank(), t.ms());
    {
        int64_t binom = (F.p() + 1) * F.p() / 2;
        int64_t rp = 1;
        for (int i = 0; i < F.e(); ++i) rp *= binom;
        rep.add("rankp_A", rp + 1, PFMatrix::from_bits(part.full, F.p()).rank(), t.ms());
        rep.add("rankp_A33", rp, PFMatrix::from_bits(part.block[2][2], F.p()).rank(), t.ms());
    }

    int64_t dim_expected = (q - 1) * (q - 1) / 4 + (q % 4 == 1 ? 1 : -1);
    rep.add("dim_L", dim_expected, code_dims(plane, "A33").k, t.ms());

    BitMatrix C = B.pow(4) + BitMatrix::identity(ne);
    BitMatrix D = C + BitMatrix::all_ones(ne);
    rep.add_flag("C_plus_D_is_allones", (C + D) == BitMatrix::all_ones(ne), t.ms());
    {
        // row of C = closed neighbor set; row of D = its complement
        bool rows_ok = true;
        auto ext = plane.external_points();
        for (int64_t i = 0; i < ne && rows_ok; ++i) {
            NeighborSets ns = neighbor_sets(plane, ext[size_t(i)]);
            std::vector<char> inc(size_t(ne), 0);
            for (int32_t j : ns.closed) inc[size_t(j)] = 1;
            for (int64_t j = 0; j < ne; ++j)
                if (C.get(i, j) != bool(inc[size_t(j)])) { rows_ok = false; break; }
        }
        rep.add_flag("C_rows_are_closed_neighbor_sets", rows_ok, t.ms());
    }

    DirectSumReport ds = direct_sum_checks(plane);
    rep.add("rank_plus_nullity", ne, ds.rank_b + ds.nullity_b, t.ms());
    rep.add("row_null_intersection", 0, ds.row_null_intersection, t.ms());
    if (ds.split_checked) rep.add_flag("kernel_splits_off_allones", ds.ok, t.ms());

    GeometryParityReport gp = parity_checks(plane);
    rep.add_flag("secant_pencil_parity", gp.secant_pencil_ok, t.ms());
    rep.add_flag("neighbor_intersection_parity", gp.neighbor_intersection_ok, t.ms());

    {
        std::stringstream ss;
        export_alist(part.block[2][2], ss);
        BitMatrix back = import_alist(ss);
        rep.add_flag("alist_round_trip", back == part.block[2][2], t.ms());
    }
}

void run_group(const GroupCtx& group, Report& rep) {
    int64_t q = group.q();
    Timer t;
    rep.add("group_order", q * (q * q - 1) / 2, group.order(), t.ms());
    rep.add("class_count", (q + 5) / 2, group.n_classes(), t.ms());
    {
        int64_t total = 0;
        for (int c = 0; c < group.n_classes(); ++c) total += group.class_size(c);
        rep.add("class_sizes_sum", group.order(), total, t.ms());
    }
    {
        bool st_ok = true;
        for (int32_t P : group.plane().external_points())
            if (!group.stabilizers(P).profile_ok) { st_ok = false; break; }
        rep.add_flag("stabilizer_profiles", st_ok, t.ms());
    }
    rep.add_flag("orbit_checks", group.orbit_checks().ok, t.ms());
    rep.add_flag("intersection_cardinalities", group.intersection_cardinalities().ok, t.ms());
    GroupParityReport pp = group.parity_profile();
    rep.add_flag("polar_image_class_parity", pp.polar_image_ok, t.ms());
    rep.add_flag("orbit_membership_class_parity", pp.orbit_membership_ok, t.ms());
}

void run_blocks(const GroupCtx& group, Report& rep) {
    Timer t;
    CharTable table = CharTable::build(group);
    rep.add_flag("character_orthogonality", table.verify_orthogonality(), t.ms());
    {
        int64_t s = 0;
        for (int i = 0; i < table.n_rows(); ++i)
            s += table.row(i).degree * table.row(i).degree;
        rep.add("degree_square_sum", table.group_order(), s, t.ms());
    }
    BrauerReduction red = BrauerReduction::make(table.conductor());
    BlockSet bs = partition_blocks(table, red);
    rep.add_flag("block_shapes", check_block_shapes(table, bs).ok, t.ms());
    compute_idempotents(bs, table, red, group);
    rep.add_flag("idempotent_determined_entries",
                 check_determined_idempotent_entries(table, bs), t.ms());
    BlockSanityReport sanity = block_sanity(table, bs);
    rep.add_flag("block_weak_orthogonality", sanity.weak_orthogonality_ok, t.ms());
    rep.add_flag("principal_involution_sums", sanity.involution_sum_ok, t.ms());
    InducedReport ind = induced_decomposition(table, group);
    rep.add("induced_degree_sum", group.q() * (group.q() + 1) / 2, ind.degree_sum, t.ms());
    rep.add_flag("induced_pattern", ind.pattern_ok, t.ms());
    BlockModuleReport md = block_module_dims(group, table, bs, red);
    rep.add_flag("kernel_block_decomposition", md.decomposition_ok, t.ms());
    rep.add_flag("block_annihilations", md.annihilation_ok, t.ms());
    rep.add_flag("block_dimension_sums", md.sums_ok, t.ms());
    rep.add_flag("defect0_complex_rank_match", md.defect0_char0_ok, t.ms());
    rep.add_flag("scalar_extension_rank", md.scalar_extension_ok, t.ms());
    {
        BrauerReduction red2 = BrauerReduction::make(table.conductor(), 1);
        BlockSet bs2 = partition_blocks(table, red2);
        bool same = bs2.blocks.size() == bs.blocks.size();
        if (same)
            for (size_t i = 0; i < bs.blocks.size(); ++i)
                if (bs.blocks[i].members != bs2.blocks[i].members) same = false;
        rep.add_flag("partition_independent_of_ideal", same, t.ms());
    }
}

// ---- commands ----

int cmd_classify(const CommonOpts& o, bool as_json) {
    auto plane = make_plane(o);
    PlaneCensus c = plane->census();
    auto tab = plane->verify_incidence_tables();
    if (as_json) {
        json j{{"q", plane->q()},
               {"points",
                {{"internal", c.internal_points},
                 {"absolute", c.absolute_points},
                 {"external", c.external_points}}},
               {"lines",
                {{"passant", c.passant_lines},
                 {"tangent", c.tangent_lines},
                 {"secant", c.secant_lines}}},
               {"incidence_tables_ok", tab.ok}};
        emit(o, j.dump(2));
    } else {
        std::ostringstream os;
        os << "PG(2," << plane->q() << ") with the standard conic\n"
           << "  points: " << c.internal_points << " internal, " << c.absolute_points
           << " absolute, " << c.external_points << " external\n"
           << "  lines:  " << c.passant_lines << " passant, " << c.tangent_lines
           << " tangent, " << c.secant_lines << " secant\n"
           << "  incidence table profiles: " << (tab.ok ? "ok" : "FAILED") << "\n";
        emit(o, os.str());
    }
    return tab.ok ? 0 : 1;
}

int cmd_dims(const CommonOpts& o, const std::string& matrix) {
    auto plane = make_plane(o);
    CodeReport r = code_dims(*plane, matrix);
    json j{{"matrix", r.matrix_id}, {"q", r.q}, {"n", r.n}, {"k", r.k}};
    emit(o, j.dump(2));
    return 0;
}

int cmd_export(const CommonOpts& o, const std::string& matrix, const std::string& format,
               const std::string& path) {
    if (format != "alist") throw std::invalid_argument("unsupported format: " + format);
    auto plane = make_plane(o);
    BitMatrix m = named_matrix(*plane, matrix);
    export_alist(m, path);
    return 0;
}

int cmd_group(const CommonOpts& o, bool classes, bool parities) {
    auto plane = make_plane(o);
    GroupCtx group = GroupCtx::build(plane);
    json j{{"q", group.q()}, {"order", group.order()}};
    if (classes || !parities) {
        json cl = json::array();
        for (int c = 0; c < group.n_classes(); ++c) {
            cl.push_back({{"name", group.class_name(c)},
                          {"size", group.class_size(c)},
                          {"element_order", group.class_element_order(c)}});
        }
        j["classes"] = cl;
    }
    bool ok = true;
    if (parities) {
        GroupParityReport pp = group.parity_profile();
        j["parities"] = {{"polar_image_ok", pp.polar_image_ok},
                         {"orbit_membership_ok", pp.orbit_membership_ok},
                         {"pairs_checked", pp.pairs_checked}};
        ok = pp.ok;
    }
    emit(o, j.dump(2));
    return ok ? 0 : 1;
}

int cmd_chartable(const CommonOpts& o, const std::string& format) {
    auto plane = make_plane(o);
    GroupCtx group = GroupCtx::build(plane);
    CharTable table = CharTable::build(group);
    const Cyclotomic& R = table.ring();
    if (format == "csv") {
        std::ostringstream os;
        os << "character,degree";
        for (int c = 0; c < table.n_classes(); ++c) os << "," << table.class_name(c);
        os << "\n_class_size,";
        for (int c = 0; c < table.n_classes(); ++c) os << "," << table.class_size(c);
        os << "\n";
        for (int i = 0; i < table.n_rows(); ++i) {
            const CharRow& r = table.row(i);
            os << r.name << "," << r.degree;
            for (int c = 0; c < table.n_classes(); ++c)
                os << "," << R.to_string(r.values[size_t(c)]);
            os << "\n";
        }
        emit(o, os.str());
    } else {
        json rows = json::array();
        for (int i = 0; i < table.n_rows(); ++i) {
            const CharRow& r = table.row(i);
            json vals = json::array();
            for (int c = 0; c < table.n_classes(); ++c)
                vals.push_back(R.to_string(r.values[size_t(c)]));
            rows.push_back({{"name", r.name}, {"degree", r.degree}, {"values", vals}});
        }
        json classes = json::array();
        for (int c = 0; c < table.n_classes(); ++c)
            classes.push_back({{"name", table.class_name(c)},
                               {"size", table.class_size(c)},
                               {"element_order", table.class_order(c)}});
        json j{{"q", table.q()},
               {"conductor", table.conductor()},
               {"classes", classes},
               {"characters", rows}};
        emit(o, j.dump(2));
    }
    return 0;
}

int cmd_blocks(const CommonOpts& o) {
    auto plane = make_plane(o);
    GroupCtx group = GroupCtx::build(plane);
    CharTable table = CharTable::build(group);
    BrauerReduction red = BrauerReduction::make(table.conductor());
    BlockSet bs = partition_blocks(table, red);
    compute_idempotents(bs, table, red, group);
    BlockModuleReport md = block_module_dims(group, table, bs, red);

    json jb = json::array();
    for (size_t b = 0; b < bs.blocks.size(); ++b) {
        const Block& blk = bs.blocks[b];
        json members = json::array();
        for (int i : blk.members) members.push_back(table.row(i).name);
        json idem = json::object();
        for (int c = 0; c < table.n_classes(); ++c)
            idem[table.class_name(c)] = blk.idempotent[size_t(c)];
        jb.push_back({{"members", members},
                      {"defect", blk.defect},
                      {"principal", blk.principal},
                      {"idempotent", idem},
                      {"dim_kernel", md.dim_kernel[b]},
                      {"dim_image", md.dim_image[b]},
                      {"dim_image2", md.dim_image2[b]},
                      {"dim_full", md.dim_full[b]}});
    }
    json j{{"q", table.q()},
           {"residue_field_degree", red.k()},
           {"blocks", jb},
           {"kernel_dimension", md.kernel_total},
           {"checks_ok", md.ok}};
    emit(o, j.dump(2));
    return md.ok ? 0 : 1;
}

int cmd_verify(const CommonOpts& o, const std::string& suite) {
    auto plane = make_plane(o);
    int64_t q = plane->q();
    Report rep;
    bool want_geometry = suite == "geometry" || suite == "all";
    bool want_matrix = suite == "matrix" || suite == "all";
    bool want_group = suite == "group" || suite == "all";
    bool want_blocks = suite == "blocks" || suite == "all";

    if (want_geometry) run_geometry(*plane, rep);
    if (want_matrix) run_matrix(*plane, rep);
    bool blocks_feasible =
        q >= 5 && residue_field_degree(character_conductor(plane->field())) <= kMaxResidueDegree;
    if (suite == "blocks" && !blocks_feasible)
        throw std::invalid_argument(
            "the blocks suite needs q >= 5 and a residue field of degree <= 30");
    std::unique_ptr<GroupCtx> group;
    if ((want_group || want_blocks) && q <= 31) {
        group = std::make_unique<GroupCtx>(GroupCtx::build(plane));
        if (want_group) run_group(*group, rep);
        if (want_blocks && blocks_feasible) run_blocks(*group, rep);
    } else if ((suite == "group" || suite == "blocks") && q > 31) {
        throw std::invalid_argument("group suites are guarded to q <= 31");
    }

    emit(o, report_to_json(rep, o, q, suite).dump(2));
    return rep.pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact conic-geometry incidence codes and PSL(2,q) block machinery"};
    app.require_subcommand(1);

    CommonOpts o_classify, o_dims, o_export, o_group, o_chartable, o_blocks, o_verify;
    bool classify_json = false;
    std::string dims_matrix = "A33";
    std::string export_matrix = "A33", export_format = "alist";
    bool group_classes = false, group_parities = false;
    std::string chartable_format = "json";
    std::string verify_suite = "all";

    auto* c_classify = app.add_subcommand("classify", "classified point/line census");
    add_common(c_classify, o_classify);
    c_classify->add_flag("--json", classify_json, "machine-readable output");

    auto* c_dims = app.add_subcommand("dims", "length and kernel dimension of a code");
    add_common(c_dims, o_dims);
    c_dims->add_option("--matrix", dims_matrix, "A, A11..A33, B, C, or D")->capture_default_str();

    auto* c_export = app.add_subcommand("export", "write a matrix in alist format");
    add_common(c_export, o_export);
    c_export->add_option("--matrix", export_matrix, "A, A11..A33, B, C, or D")
        ->capture_default_str();
    c_export->add_option("--format", export_format, "alist")->capture_default_str();

    auto* c_group = app.add_subcommand("group", "conjugacy class census and parity sweeps");
    add_common(c_group, o_group);
    c_group->add_flag("--classes", group_classes, "emit the class census");
    c_group->add_flag("--parities", group_parities, "run the class-parity verification");

    auto* c_chartable = app.add_subcommand("chartable", "exact ordinary character table");
    add_common(c_chartable, o_chartable);
    c_chartable->add_option("--format", chartable_format, "json or csv")->capture_default_str();

    auto* c_blocks = app.add_subcommand("blocks", "2-blocks, idempotents, module dimensions");
    add_common(c_blocks, o_blocks);

    auto* c_verify = app.add_subcommand("verify", "run a verification suite");
    add_common(c_verify, o_verify);
    c_verify->add_option("--suite", verify_suite, "geometry, matrix, group, blocks, or all")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    }

    try {
        if (c_classify->parsed()) return cmd_classify(o_classify, classify_json);
        if (c_dims->parsed()) return cmd_dims(o_dims, dims_matrix);
        if (c_export->parsed()) {
            if (o_export.out.empty())
                throw std::invalid_argument("export needs --out PATH");
            return cmd_export(o_export, export_matrix, export_format, o_export.out);
        }
        if (c_group->parsed()) return cmd_group(o_group, group_classes, group_parities);
        if (c_chartable->parsed()) return cmd_chartable(o_chartable, chartable_format);
        if (c_blocks->parsed()) return cmd_blocks(o_blocks);
        if (c_verify->parsed()) return cmd_verify(o_verify, verify_suite);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
