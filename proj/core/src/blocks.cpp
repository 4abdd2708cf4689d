#include "conic/blocks.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <sstream>
#include <stdexcept>

#include "conic/bitmatrix.hpp"
#include "conic/incidence.hpp"

namespace conic {
namespace {

int v2(int64_t n) {
    int v = 0;
    while (n % 2 == 0) { n /= 2; ++v; }
    return v;
}

// The same family split recovered from the table alone (classes mirror the
// group's canonical order; names are stable).
struct TableFamilies {
    std::vector<int> theta, pi;
    int id_c = 0, up_c = 1, um_c = 2, inv_c = -1;
};
TableFamilies table_families(const CharTable& t) {
    TableFamilies f;
    for (int c = 0; c < t.n_classes(); ++c) {
        std::string n = t.class_name(c);
        if (n.rfind("split", 0) == 0) f.theta.push_back(c);
        if (n.rfind("nonsplit", 0) == 0) f.pi.push_back(c);
        if (n == "involution") f.inv_c = c;
    }
    return f;
}

}  // namespace

BlockSet partition_blocks(const CharTable& table, const BrauerReduction& red) {
    int nr = table.n_rows(), nc = table.n_classes();
    BlockSet bs;
    bs.lambda.assign(size_t(nr), std::vector<uint32_t>(size_t(nc), 0));
    for (int i = 0; i < nr; ++i)
        for (int c = 0; c < nc; ++c) bs.lambda[size_t(i)][size_t(c)] = red.reduce(table.omega(i, c));

    std::map<std::vector<uint32_t>, int> seen;
    for (int i = 0; i < nr; ++i) {
        auto [it, fresh] = seen.emplace(bs.lambda[size_t(i)], int(bs.blocks.size()));
        if (fresh) bs.blocks.push_back({});
        bs.blocks[size_t(it->second)].members.push_back(i);
    }
    int vH = v2(table.group_order());
    for (auto& b : bs.blocks) {
        int minv = vH;
        bool principal = false;
        for (int i : b.members) {
            minv = std::min(minv, v2(table.row(i).degree));
            if (i == table.trivial_index()) principal = true;
        }
        b.defect = vH - minv;
        b.principal = principal;
    }
    return bs;
}

void compute_idempotents(BlockSet& bs, const CharTable& table, const BrauerReduction& red,
                         const GroupCtx& group) {
    const Cyclotomic& R = table.ring();
    int nc = table.n_classes();
    int64_t H = table.group_order();
    int v = v2(H);
    int64_t odd = H >> v;
    GaloisRing GR = GaloisRing::make(red, v + 1);
    // The odd cofactor is a 2-adic unit; only its parity matters at the final
    // mod-2 step, and it is odd, so no correction factor is needed.
    if (odd % 2 == 0) throw std::logic_error("odd part of the group order is even");

    for (auto& b : bs.blocks) {
        b.idempotent.assign(size_t(nc), 0);
        for (int c = 0; c < nc; ++c) {
            CycInt num = R.zero();
            for (int i : b.members) {
                const CharRow& row = table.row(i);
                // chi(x_C^-1) = conj(chi(x_C))
                num = R.add(num, R.scale(R.conj(row.values[size_t(c)]), row.degree));
            }
            // Block sums are invariant under the 2-primary Galois action, so the
            // normalized trace onto Q(zeta_M) reproduces them exactly; verify.
            std::vector<int64_t> vec_m = red.project_odd_part(num);
            if (!R.equal(red.embed_odd_part(R, vec_m), num))
                throw std::logic_error("block coefficient is not in the odd-conductor subring");
            auto lifted = GR.eval_odd_vector(vec_m);
            if (GR.valuation(lifted) < v)
                throw std::logic_error("block coefficient fails 2-adic integrality");
            b.idempotent[size_t(c)] = GR.shift_to_residue(lifted, v);
        }
    }

    // sum of idempotents = the identity element (the identity class sum)
    for (int c = 0; c < nc; ++c) {
        uint32_t s = 0;
        for (const auto& b : bs.blocks) s ^= b.idempotent[size_t(c)];
        uint32_t want = (table.class_name(c) == "identity") ? 1 : 0;
        if (s != want) throw std::logic_error("block idempotents do not sum to the identity");
    }

    // orthogonal idempotency in the center via class multiplication constants
    const auto& sc = group.structure_constants();
    const GF2k& K = red.field();
    auto center_mul = [&](const std::vector<uint32_t>& A, const std::vector<uint32_t>& B) {
        std::vector<uint32_t> out(size_t(nc), 0);
        for (int i = 0; i < nc; ++i) {
            if (!A[size_t(i)]) continue;
            for (int j = 0; j < nc; ++j) {
                if (!B[size_t(j)]) continue;
                uint32_t cij = K.mul(A[size_t(i)], B[size_t(j)]);
                if (!cij) continue;
                for (int k = 0; k < nc; ++k)
                    if (sc[(size_t(i) * nc + size_t(j)) * nc + size_t(k)] & 1) out[size_t(k)] ^= cij;
            }
        }
        return out;
    };
    for (size_t a = 0; a < bs.blocks.size(); ++a) {
        for (size_t b = 0; b < bs.blocks.size(); ++b) {
            auto prod = center_mul(bs.blocks[a].idempotent, bs.blocks[b].idempotent);
            const std::vector<uint32_t> want =
                (a == b) ? bs.blocks[a].idempotent : std::vector<uint32_t>(size_t(nc), 0);
            if (prod != want)
                throw std::logic_error("block idempotents are not orthogonal idempotents");
        }
    }
}

BlockShapeReport check_block_shapes(const CharTable& table, const BlockSet& bs) {
    int64_t q = table.q();
    bool q1 = (q % 4 == 1);
    int n_ = v2(q1 ? q - 1 : q + 1);
    int64_t m_ = (q1 ? q - 1 : q + 1) >> n_;
    int64_t d0_degree = q1 ? q - 1 : q + 1;

    BlockShapeReport rep;
    rep.expected_principal_size = (int64_t(1) << (n_ - 2)) + 3;
    rep.expected_defect0_count = q1 ? (q - 1) / 4 : (q - 3) / 4;
    rep.expected_middle_count = (m_ - 1) / 2;
    rep.expected_middle_size = int64_t(1) << (n_ - 1);

    rep.defect0_degrees_ok = true;
    for (const auto& b : bs.blocks) {
        if (b.principal) rep.principal_size = int64_t(b.members.size());
        else if (b.defect == 0) {
            ++rep.defect0_count;
            if (b.members.size() != 1 || table.row(b.members[0]).degree != d0_degree)
                rep.defect0_degrees_ok = false;
        } else {
            ++rep.middle_count;
            rep.middle_size = int64_t(b.members.size());
            if (b.defect != n_ - 1) rep.defect0_degrees_ok = false;
        }
    }
    if (rep.middle_count == 0) rep.middle_size = 0;
    rep.ok = rep.principal_size == rep.expected_principal_size &&
             rep.defect0_count == rep.expected_defect0_count &&
             rep.middle_count == rep.expected_middle_count &&
             (rep.middle_count == 0 || rep.middle_size == rep.expected_middle_size) &&
             rep.defect0_degrees_ok;
    return rep;
}

bool check_determined_idempotent_entries(const CharTable& table, const BlockSet& bs,
                                         std::string* first_failure) {
    TableFamilies f = table_families(table);
    bool q1 = (table.q() % 4 == 1);
    auto fail = [&](const std::string& m) {
        if (first_failure && first_failure->empty()) *first_failure = m;
        return false;
    };
    bool ok = true;
    for (size_t bi = 0; bi < bs.blocks.size(); ++bi) {
        const Block& b = bs.blocks[bi];
        const auto& e = b.idempotent;
        auto expect = [&](int cls, uint32_t want, const char* what) {
            if (e[size_t(cls)] != want) {
                std::ostringstream os;
                os << "block " << bi << ": " << what;
                ok = fail(os.str());
            }
        };
        expect(f.inv_c, 0, "involution coefficient nonzero");
        if (e[size_t(f.up_c)] != e[size_t(f.um_c)])
            ok = fail("unipotent coefficients differ within a block");
        if (b.principal) {
            expect(f.id_c, 1, "principal identity coefficient != 1");
            for (int c : (q1 ? f.pi : f.theta)) expect(c, 1, "principal family coefficient != 1");
        } else {
            expect(f.id_c, 0, "non-principal identity coefficient != 0");
            expect(f.up_c, 1, "non-principal unipotent coefficient != 1");
            expect(f.um_c, 1, "non-principal unipotent coefficient != 1");
            if (b.defect == 0) {
                for (int c : (q1 ? f.theta : f.pi)) expect(c, 0, "defect-0 family coefficient != 0");
            } else {
                for (int c : (q1 ? f.pi : f.theta)) expect(c, 0, "middle-block family coefficient != 0");
            }
        }
    }
    return ok;
}

BlockSanityReport block_sanity(const CharTable& table, const BlockSet& bs) {
    const Cyclotomic& R = table.ring();
    int nc = table.n_classes();
    BlockSanityReport rep;

    rep.weak_orthogonality_ok = true;
    for (const auto& b : bs.blocks) {
        for (int h = 0; h < nc && rep.weak_orthogonality_ok; ++h) {
            if (table.class_order(h) % 2 == 0) continue;  // need 2-regular h
            for (int g = 0; g < nc; ++g) {
                if (table.class_order(g) % 2 == 1) continue;  // need 2-singular g
                CycInt acc = R.zero();
                for (int i : b.members)
                    acc = R.add(acc, R.mul(table.row(i).values[size_t(h)],
                                           R.conj(table.row(i).values[size_t(g)])));
                if (!R.is_zero(acc)) {
                    rep.weak_orthogonality_ok = false;
                    break;
                }
            }
        }
    }

    int64_t q = table.q();
    bool q1 = (q % 4 == 1);
    int64_t fam_deg = q1 ? q + 1 : q - 1;
    const Block* principal = nullptr;
    for (const auto& b : bs.blocks)
        if (b.principal) principal = &b;
    CycInt sum = R.zero();
    for (int i : principal->members)
        if (table.row(i).degree == fam_deg)
            sum = R.add(sum, table.row(i).values[size_t(table.involution_class())]);
    int64_t want = 0;
    switch (q % 8) {
        case 1: want = -2; break;
        case 5: want = 0; break;
        case 7: want = 2; break;
        case 3: want = 0; break;
    }
    rep.involution_sum_ok = R.equal(sum, R.integer(want));
    rep.ok = rep.weak_orthogonality_ok && rep.involution_sum_ok;
    return rep;
}

InducedReport induced_decomposition(const CharTable& table, const GroupCtx& group) {
    const Cyclotomic& R = table.ring();
    int64_t q = table.q();
    StabilizerReport st = group.stabilizers(group.plane().external_points()[0]);
    if (st.order_h != q - 1) throw std::logic_error("stabilizer order is off");

    InducedReport rep;
    rep.multiplicities.resize(size_t(table.n_rows()));
    for (int i = 0; i < table.n_rows(); ++i) {
        CycInt acc = R.zero();
        for (int c = 0; c < table.n_classes(); ++c) {
            int64_t cnt = st.class_counts[size_t(c)];
            if (cnt) acc = R.add(acc, R.scale(table.row(i).values[size_t(c)], cnt));
        }
        auto m = R.as_integer(R.div_exact(acc, q - 1));
        if (!m || *m < 0) throw std::logic_error("induced multiplicity is not a natural number");
        rep.multiplicities[size_t(i)] = *m;
        rep.degree_sum += *m * table.row(i).degree;
    }

    bool q1 = (q % 4 == 1);
    bool halves = (q % 8 == 1) || (q % 8 == 3);
    rep.pattern_ok = true;
    for (int i = 0; i < table.n_rows(); ++i) {
        const std::string& n = table.row(i).name;
        int64_t m = rep.multiplicities[size_t(i)];
        if (n == "trivial" && m != 1) rep.pattern_ok = false;
        if (n == "steinberg" && m != (q1 ? 2 : 1)) rep.pattern_ok = false;
        if (n.rfind("discrete", 0) == 0 && q1 && m != 1) rep.pattern_ok = false;
        if (n.rfind("principal", 0) == 0 && !q1 && m != 1) rep.pattern_ok = false;
        if (n.rfind("half_", 0) == 0 && m != (halves ? 1 : 0)) rep.pattern_ok = false;
    }
    rep.ok = rep.pattern_ok && rep.degree_sum == q * (q + 1) / 2;
    return rep;
}

BlockModuleReport block_module_dims(const GroupCtx& group, const CharTable& table,
                                    const BlockSet& bs, const BrauerReduction& red) {
    const PlaneCtx& plane = group.plane();
    int64_t q = group.q();
    bool q1 = (q % 4 == 1);
    auto ext = plane.external_points();
    int64_t ne = int64_t(ext.size());
    int nc = group.n_classes();
    const GF2k& K = red.field();

    BitMatrix B = build_B(plane);
    BitMatrix C = B.pow(4) + BitMatrix::identity(ne);
    BitMatrix D = C + BitMatrix::all_ones(ne);

    // Parity of the class action counts #{h in C : P^h = Q}, as bit rows P -> Q.
    std::vector<BitMatrix> action(size_t(nc), BitMatrix(ne, ne));
    for (int c = 0; c < nc; ++c) {
        for (int32_t h : group.class_members(c)) {
            auto perm = group.external_perm(h);
            for (int64_t e = 0; e < ne; ++e) {
                int64_t img = perm[size_t(e)];
                action[size_t(c)].set(e, img, !action[size_t(c)].get(e, img));
            }
        }
    }

    // Image of a GF(2) row vector under a block idempotent, as a GF(2^k) row.
    int64_t wpr = (ne + 63) >> 6;
    auto apply_idem = [&](const std::vector<uint32_t>& idem, std::span<const uint64_t> xrow,
                          std::vector<uint32_t>& out) {
        std::fill(out.begin(), out.end(), 0);
        std::vector<uint64_t> z(size_t(wpr), 0);
        for (int c = 0; c < nc; ++c) {
            uint32_t coeff = idem[size_t(c)];
            if (!coeff) continue;
            std::fill(z.begin(), z.end(), 0);
            for (int64_t w = 0; w < wpr; ++w) {
                uint64_t bits = xrow[size_t(w)];
                while (bits) {
                    int64_t p = (w << 6) + std::countr_zero(bits);
                    bits &= bits - 1;
                    action[size_t(c)].xor_row_into(p, z);
                }
            }
            for (int64_t w = 0; w < wpr; ++w) {
                uint64_t bits = z[size_t(w)];
                while (bits) {
                    int64_t p = (w << 6) + std::countr_zero(bits);
                    bits &= bits - 1;
                    out[size_t(p)] ^= coeff;
                }
            }
        }
    };

    auto rank_gf2k = [&](std::vector<std::vector<uint32_t>>& rows) {
        int64_t r = 0;
        int64_t nrows = int64_t(rows.size());
        for (int64_t c = 0; c < ne && r < nrows; ++c) {
            int64_t pr = -1;
            for (int64_t i = r; i < nrows; ++i)
                if (rows[size_t(i)][size_t(c)]) { pr = i; break; }
            if (pr < 0) continue;
            std::swap(rows[size_t(r)], rows[size_t(pr)]);
            uint32_t inv = K.inv(rows[size_t(r)][size_t(c)]);
            if (inv != 1)
                for (int64_t j = c; j < ne; ++j)
                    rows[size_t(r)][size_t(j)] = K.mul(inv, rows[size_t(r)][size_t(j)]);
            for (int64_t i = 0; i < nrows; ++i) {
                if (i == r) continue;
                uint32_t f = rows[size_t(i)][size_t(c)];
                if (!f) continue;
                for (int64_t j = c; j < ne; ++j)
                    rows[size_t(i)][size_t(j)] ^= K.mul(f, rows[size_t(r)][size_t(j)]);
            }
            ++r;
        }
        return r;
    };

    auto block_dim = [&](const std::vector<uint32_t>& idem, const BitMatrix& basis) {
        std::vector<std::vector<uint32_t>> rows(size_t(basis.rows()),
                                                std::vector<uint32_t>(size_t(ne), 0));
        for (int64_t i = 0; i < basis.rows(); ++i) apply_idem(idem, basis.row(i), rows[size_t(i)]);
        return rank_gf2k(rows);
    };

    BitMatrix ker = B.nullspace_basis();
    BitMatrix im = B.row_space_basis();
    BitMatrix im2 = D.row_space_basis();
    BitMatrix full = BitMatrix::identity(ne);

    BlockModuleReport rep;
    int64_t nb = int64_t(bs.blocks.size());
    rep.dim_kernel.resize(size_t(nb));
    rep.dim_image.resize(size_t(nb));
    rep.dim_image2.resize(size_t(nb));
    rep.dim_full.resize(size_t(nb));
    for (int64_t b = 0; b < nb; ++b) {
        const auto& idem = bs.blocks[size_t(b)].idempotent;
        rep.dim_kernel[size_t(b)] = block_dim(idem, ker);
        rep.dim_image[size_t(b)] = block_dim(idem, im);
        rep.dim_image2[size_t(b)] = block_dim(idem, im2);
        rep.dim_full[size_t(b)] = block_dim(idem, full);
        rep.kernel_total += rep.dim_kernel[size_t(b)];
    }

    // Pattern of the main decomposition and the annihilation facts.
    rep.decomposition_ok = true;
    rep.annihilation_ok = true;
    int64_t expected_total = q1 ? (q - 1) * (q - 1) / 4 + 1 : (q - 1) * (q - 1) / 4 - 1;
    for (int64_t b = 0; b < nb; ++b) {
        const Block& blk = bs.blocks[size_t(b)];
        if (q1) {
            if (blk.defect == 0) {
                if (rep.dim_kernel[size_t(b)] != q - 1) rep.decomposition_ok = false;
                if (rep.dim_image[size_t(b)] != 0) rep.annihilation_ok = false;
            } else {
                if (rep.dim_kernel[size_t(b)] != (blk.principal ? 1 : 0))
                    rep.decomposition_ok = false;
                if (rep.dim_image2[size_t(b)] != 0) rep.annihilation_ok = false;
            }
        } else {
            if (blk.defect == 0) {
                if (rep.dim_kernel[size_t(b)] != q + 1) rep.decomposition_ok = false;
                if (rep.dim_image[size_t(b)] != 0) rep.annihilation_ok = false;
            } else {
                if (rep.dim_kernel[size_t(b)] != 0) rep.decomposition_ok = false;
            }
        }
    }
    if (rep.kernel_total != expected_total || rep.kernel_total != ker.rows())
        rep.decomposition_ok = false;

    int64_t full_total = 0;
    for (int64_t b = 0; b < nb; ++b) full_total += rep.dim_full[size_t(b)];
    rep.sums_ok = (full_total == ne);

    // Defect-0 components of the permutation module have the dimension the
    // complex induced character predicts.
    InducedReport ind = induced_decomposition(table, group);
    rep.defect0_char0_ok = true;
    for (int64_t b = 0; b < nb; ++b) {
        const Block& blk = bs.blocks[size_t(b)];
        if (blk.defect != 0) continue;
        int chi = blk.members[0];
        int64_t want = ind.multiplicities[size_t(chi)] * table.row(chi).degree;
        if (rep.dim_full[size_t(b)] != want) rep.defect0_char0_ok = false;
    }

    // GF(2) ranks are preserved under scalar extension to GF(2^k).
    {
        std::vector<std::vector<uint32_t>> rows(size_t(ne), std::vector<uint32_t>(size_t(ne), 0));
        for (int64_t i = 0; i < ne; ++i)
            for (int64_t j = 0; j < ne; ++j) rows[size_t(i)][size_t(j)] = B.get(i, j) ? 1 : 0;
        rep.scalar_extension_ok = (rank_gf2k(rows) == B.rank());
    }

    rep.ok = rep.decomposition_ok && rep.annihilation_ok && rep.sums_ok &&
             rep.defect0_char0_ok && rep.scalar_extension_ok;
    return rep;
}

}  // namespace conic
