// Acceptance suite: runs every top-level verification criterion at its full
// q range and prints one pass/fail line per criterion. Exit code is the
// number of failed criteria. All checks are exact.

#include <cstdio>
#include <map>
#include <memory>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "conic/blocks.hpp"
#include "conic/brauer.hpp"
#include "conic/chartable.hpp"
#include "conic/field.hpp"
#include "conic/group.hpp"
#include "conic/incidence.hpp"
#include "conic/plane.hpp"

using namespace conic;

namespace {

const std::vector<int64_t> kGroupRange = {5, 7, 9, 11, 13};
const std::vector<int64_t> kMatrixRange = {5, 7, 9, 11, 13, 17, 19, 23, 25, 27};

struct Harness {
    std::map<int64_t, std::shared_ptr<const PlaneCtx>> planes;
    std::map<int64_t, std::shared_ptr<GroupCtx>> groups;
    std::map<int64_t, std::shared_ptr<CharTable>> tables;
    std::map<int64_t, std::shared_ptr<BrauerReduction>> reds;
    std::map<int64_t, BlockSet> blocksets;

    const PlaneCtx& plane(int64_t q) {
        auto it = planes.find(q);
        if (it == planes.end()) {
            auto F = std::make_shared<FieldCtx>(FieldCtx::from_order(q));
            it = planes.emplace(q, std::make_shared<PlaneCtx>(PlaneCtx::build(F))).first;
        }
        return *it->second;
    }
    GroupCtx& group(int64_t q) {
        auto it = groups.find(q);
        if (it == groups.end()) {
            plane(q);
            it = groups.emplace(q, std::make_shared<GroupCtx>(GroupCtx::build(planes.at(q)))).first;
        }
        return *it->second;
    }
    CharTable& table(int64_t q) {
        auto it = tables.find(q);
        if (it == tables.end())
            it = tables.emplace(q, std::make_shared<CharTable>(CharTable::build(group(q)))).first;
        return *it->second;
    }
    BrauerReduction& reduction(int64_t q) {
        auto it = reds.find(q);
        if (it == reds.end())
            it = reds
                     .emplace(q, std::make_shared<BrauerReduction>(
                                     BrauerReduction::make(table(q).conductor())))
                     .first;
        return *it->second;
    }
    BlockSet& blocks(int64_t q) {
        auto it = blocksets.find(q);
        if (it == blocksets.end()) {
            BlockSet bs = partition_blocks(table(q), reduction(q));
            compute_idempotents(bs, table(q), reduction(q), group(q));
            it = blocksets.emplace(q, std::move(bs)).first;
        }
        return it->second;
    }
};

int g_failures = 0;

void criterion(int number, const std::string& label, bool ok, const std::string& detail) {
    std::printf("[%s] %2d. %s%s%s\n", ok ? "PASS" : "FAIL", number, label.c_str(),
                detail.empty() ? "" : " -- ", detail.c_str());
    if (!ok) ++g_failures;
}

std::string join_fails(const std::vector<std::string>& fails) {
    if (fails.empty()) return "";
    std::ostringstream os;
    for (size_t i = 0; i < fails.size(); ++i) os << (i ? "; " : "") << fails[i];
    return os.str();
}

}  // namespace

int main() {
    Harness hx;
    std::vector<std::string> fails;
    auto note = [&](int64_t q, const std::string& what) {
        std::ostringstream os;
        os << "q=" << q << ": " << what;
        fails.push_back(os.str());
    };

    // 1. kernel dimension of the secant/external incidence code
    {
        fails.clear();
        const std::map<int64_t, int64_t> expected = {{5, 5},    {7, 8},    {9, 17},
                                                     {11, 24},  {13, 37},  {17, 65},
                                                     {19, 80},  {23, 120}, {25, 145},
                                                     {27, 168}};
        for (int64_t q : kMatrixRange) {
            int64_t k = code_dims(hx.plane(q), "A33").k;
            if (k != expected.at(q)) note(q, "dim " + std::to_string(k));
        }
        criterion(1, "kernel dimension formula for the secant/external code", fails.empty(),
                  join_fails(fails));
    }

    // 2. fifth and third power identities of the polar matrix
    {
        fails.clear();
        const std::set<int64_t> cube_equal = {5, 11, 13, 19, 27};
        for (int64_t q : kMatrixRange) {
            PowerIdentityReport rep = verify_power_identity(hx.plane(q));
            if (!rep.b5_ok) note(q, "fifth power differs");
            if (rep.b3_eq != (cube_equal.count(q) > 0)) note(q, "third power case is wrong");
        }
        criterion(2, "polar matrix power identities (B^5 = B; B^3 case split)", fails.empty(),
                  join_fails(fails));
    }

    // 3. classical 2-rank and p-rank of the incidence matrix
    {
        fails.clear();
        for (int64_t q : kMatrixRange) {
            auto part = build_partition(hx.plane(q));
            if (part.full.rank() != q * q + q) note(q, "2-rank of A");
        }
        for (int64_t q : {5, 7, 9, 25, 27}) {
            const PlaneCtx& p = hx.plane(q);
            auto part = build_partition(p);
            int64_t p_ = p.field().p();
            int64_t binom = p_ * (p_ + 1) / 2;
            int64_t want = 1;
            for (int i = 0; i < p.field().e(); ++i) want *= binom;
            if (PFMatrix::from_bits(part.full, p_).rank() != want + 1) note(q, "p-rank of A");
            if (PFMatrix::from_bits(part.block[2][2], p_).rank() != want)
                note(q, "p-rank of the secant/external block");
        }
        criterion(3, "2-rank q^2+q and p-rank binom(p+1,2)^e (+1) facts", fails.empty(),
                  join_fails(fails));
    }

    // 4. census and incidence table profiles
    {
        fails.clear();
        for (int64_t q : kMatrixRange) {
            const PlaneCtx& p = hx.plane(q);
            PlaneCensus c = p.census();
            bool counts = c.external_points == q * (q + 1) / 2 &&
                          c.internal_points == q * (q - 1) / 2 && c.absolute_points == q + 1 &&
                          c.secant_lines == q * (q + 1) / 2 &&
                          c.passant_lines == q * (q - 1) / 2 && c.tangent_lines == q + 1;
            if (!counts) note(q, "census");
            if (!p.verify_incidence_tables().ok) note(q, "table profile");
        }
        criterion(4, "point/line census and per-class incidence profiles", fails.empty(),
                  join_fails(fails));
    }

    // 5. group order, class census, stabilizer profiles
    {
        fails.clear();
        for (int64_t q : kGroupRange) {
            GroupCtx& G = hx.group(q);
            if (G.order() != q * (q * q - 1) / 2) note(q, "group order");
            if (G.n_classes() != (q + 5) / 2) note(q, "class count");
            int64_t total = 0;
            for (int c = 0; c < G.n_classes(); ++c) total += G.class_size(c);
            if (total != G.order()) note(q, "class sizes");
            for (int32_t P : G.plane().external_points()) {
                StabilizerReport st = G.stabilizers(P);
                if (!st.profile_ok || st.order_g != 2 * (q - 1)) {
                    note(q, "stabilizer profile");
                    break;
                }
            }
        }
        criterion(5, "group structure: order, class census, stabilizer profiles", fails.empty(),
                  join_fails(fails));
    }

    // 6. exhaustive parity sweeps (geometric and group-class)
    {
        fails.clear();
        for (int64_t q : kGroupRange) {
            GeometryParityReport gp = parity_checks(hx.plane(q));
            if (!gp.ok) note(q, "geometric parity: " + gp.first_failure);
            GroupParityReport pp = hx.group(q).parity_profile();
            if (!pp.ok) note(q, "class parity: " + pp.first_failure);
        }
        criterion(6, "parity sweeps over all pairs (pencils, neighbors, class sets)",
                  fails.empty(), join_fails(fails));
    }

    // 7. direct sum decompositions
    {
        fails.clear();
        for (int64_t q : kMatrixRange) {
            DirectSumReport ds = direct_sum_checks(hx.plane(q));
            int64_t ne = q * (q + 1) / 2;
            if (ds.rank_b + ds.nullity_b != ne) note(q, "rank-nullity");
            if (ds.row_null_intersection != 0) note(q, "row/null intersection");
        }
        for (int64_t q : {5, 9, 13}) {
            DirectSumReport ds = direct_sum_checks(hx.plane(q));
            if (!(ds.allones_in_null && ds.allones_outside_d && ds.d_rows_in_null &&
                  ds.null_dim_matches))
                note(q, "all-ones splitting");
        }
        criterion(7, "image/kernel direct sum and the all-ones splitting", fails.empty(),
                  join_fails(fails));
    }

    // 8. exact character table orthogonality
    {
        fails.clear();
        for (int64_t q : kGroupRange) {
            CharTable& t = hx.table(q);
            if (!t.verify_orthogonality()) note(q, "orthogonality");
            int64_t s = 0;
            for (int i = 0; i < t.n_rows(); ++i) s += t.row(i).degree * t.row(i).degree;
            if (s != t.group_order()) note(q, "degree squares");
        }
        criterion(8, "character table orthogonality relations (exact)", fails.empty(),
                  join_fails(fails));
    }

    // 9. decomposition of the permutation character
    {
        fails.clear();
        for (int64_t q : kGroupRange) {
            InducedReport ind = induced_decomposition(hx.table(q), hx.group(q));
            if (!ind.pattern_ok) note(q, "multiplicity pattern");
            if (ind.degree_sum != q * (q + 1) / 2) note(q, "degree sum");
        }
        criterion(9, "permutation character decomposition and degree bookkeeping",
                  fails.empty(), join_fails(fails));
    }

    // 10. block partition shapes, idempotent entries, block orthogonality
    {
        fails.clear();
        for (int64_t q : kGroupRange) {
            BlockShapeReport shp = check_block_shapes(hx.table(q), hx.blocks(q));
            if (!shp.ok) note(q, "shape");
            std::string why;
            if (!check_determined_idempotent_entries(hx.table(q), hx.blocks(q), &why))
                note(q, "idempotent entries: " + why);
            BlockSanityReport sn = block_sanity(hx.table(q), hx.blocks(q));
            if (!sn.weak_orthogonality_ok) note(q, "weak orthogonality");
            if (!sn.involution_sum_ok) note(q, "involution sums");
        }
        {   // pinned shapes
            auto count_shape = [&](int64_t q, int64_t pr, int64_t d0, int64_t mid, int64_t msz) {
                BlockShapeReport s = check_block_shapes(hx.table(q), hx.blocks(q));
                if (s.principal_size != pr || s.defect0_count != d0 || s.middle_count != mid ||
                    (mid && s.middle_size != msz))
                    note(q, "pinned shape");
            };
            count_shape(13, 4, 3, 1, 2);
            count_shape(11, 4, 2, 1, 2);
            count_shape(9, 5, 2, 0, 0);
        }
        criterion(10, "2-block partition, idempotent coefficients, block orthogonality",
                  fails.empty(), join_fails(fails));
    }

    // 11. block decomposition of the kernel module
    {
        fails.clear();
        for (int64_t q : kGroupRange) {
            BlockModuleReport md =
                block_module_dims(hx.group(q), hx.table(q), hx.blocks(q), hx.reduction(q));
            if (!md.decomposition_ok) note(q, "kernel block dims");
            if (!md.annihilation_ok) note(q, "annihilations");
            if (!md.sums_ok) note(q, "dimension sums");
            if (!md.defect0_char0_ok) note(q, "complex-rank match");
            if (!md.scalar_extension_ok) note(q, "scalar extension");
            int64_t want = (q - 1) * (q - 1) / 4 + (q % 4 == 1 ? 1 : -1);
            if (md.kernel_total != want) note(q, "kernel total");
        }
        criterion(11, "kernel decomposes into the predicted block components", fails.empty(),
                  join_fails(fails));
    }

    // 12. property suite: involution, equivariance, incidence preservation, alist
    {
        fails.clear();
        for (int64_t q : {5, 7, 9}) {  // exhaustive
            const PlaneCtx& p = hx.plane(q);
            GroupCtx& G = hx.group(q);
            for (int32_t i = 0; i < p.n(); ++i)
                if (p.polarity_line(p.polarity_point(i)) != i) {
                    note(q, "polarity involution");
                    break;
                }
            bool equi = true, incid = true;
            for (int32_t h = 0; h < G.order() && (equi || incid); ++h) {
                Mat3 adj = mat3_adjugate(p.field(), G.mat3(h));
                for (int32_t P = 0; P < p.n(); ++P) {
                    if (p.act_line_pre(adj, p.polarity_point(P)) !=
                        p.polarity_point(G.act_point(h, P)))
                        equi = false;
                }
                for (int32_t L = 0; L < p.n(); ++L) {
                    int32_t Limg = p.act_line_pre(adj, L);
                    for (int32_t P : p.points_on_line(L))
                        if (!p.incident(G.act_point(h, P), Limg)) incid = false;
                }
            }
            if (!equi) note(q, "polar equivariance");
            if (!incid) note(q, "incidence preservation");
            std::stringstream ss;
            auto part = build_partition(p);
            export_alist(part.block[2][2], ss);
            if (!(import_alist(ss) == part.block[2][2])) note(q, "alist round trip");
        }
        for (int64_t q : {11, 13, 17, 27}) {  // sampled
            const PlaneCtx& p = hx.plane(q);
            GroupCtx& G = hx.group(q);
            std::mt19937 rng(2024);
            std::uniform_int_distribution<int32_t> dh(0, int32_t(G.order()) - 1);
            std::uniform_int_distribution<int32_t> dp(0, p.n() - 1);
            bool ok = true;
            for (int rep = 0; rep < 1200 && ok; ++rep) {
                int32_t h = dh(rng), P = dp(rng), L = dp(rng);
                Mat3 adj = mat3_adjugate(p.field(), G.mat3(h));
                if (p.act_line_pre(adj, p.polarity_point(P)) !=
                    p.polarity_point(G.act_point(h, P)))
                    ok = false;
                if (p.incident(P, L) !=
                    p.incident(G.act_point(h, P), p.act_line_pre(adj, L)))
                    ok = false;
                if (p.polarity_line(p.polarity_point(P)) != P) ok = false;
            }
            if (!ok) note(q, "sampled properties");
            std::stringstream ss;
            BitMatrix B = build_B(p);
            export_alist(B, ss);
            if (!(import_alist(ss) == B)) note(q, "alist round trip");
        }
        criterion(12, "property suite: involution, equivariance, preservation, alist",
                  fails.empty(), join_fails(fails));
    }

    std::printf("%s: %d criterion(s) failed\n", g_failures ? "FAIL" : "OK", g_failures);
    return g_failures;
}
