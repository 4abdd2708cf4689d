#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "conic/brauer.hpp"
#include "conic/chartable.hpp"
#include "conic/group.hpp"

namespace conic {

/// A 2-block: member character rows, defect, and the coefficients of its
/// central idempotent in the class-sum basis of the characteristic-2 group
/// algebra (GF(2^k) elements, indexed by class id).
struct Block {
    std::vector<int> members;
    int defect = 0;
    bool principal = false;
    std::vector<uint32_t> idempotent;
};

struct BlockSet {
    std::vector<Block> blocks;
    std::vector<std::vector<uint32_t>> lambda;  // central characters mod 2, row x class
};

/// Partitions the irreducible characters by equality of the reduced central
/// characters; fills defects and flags the block containing the trivial
/// character.
BlockSet partition_blocks(const CharTable& table, const BrauerReduction& red);

/// Computes every block idempotent by the 2-adic route: the class-sum
/// coefficient is sum(chi(1) chi(x_C^-1)) over the block, projected onto the
/// odd-conductor subring, lifted to the Galois ring at precision v+1
/// (v = v_2(|H|)), divided exactly by |H| and reduced mod 2. Verifies
/// idempotency and pairwise orthogonality in the center via the class
/// multiplication constants, and that the idempotents sum to the identity.
/// Throws on any failure.
void compute_idempotents(BlockSet& bs, const CharTable& table, const BrauerReduction& red,
                         const GroupCtx& group);

struct BlockShapeReport {
    int64_t principal_size = 0, expected_principal_size = 0;
    int64_t defect0_count = 0, expected_defect0_count = 0;
    int64_t middle_count = 0, expected_middle_count = 0;  // defect n-1 blocks
    int64_t middle_size = 0, expected_middle_size = 0;
    bool defect0_degrees_ok = false;  // each defect-0 block is one character of
                                      // degree q-1 (q=1 mod 4) or q+1 (q=3 mod 4)
    bool ok = false;
};
BlockShapeReport check_block_shapes(const CharTable& table, const BlockSet& bs);

/// The determined coefficient table satisfied by every block idempotent:
/// principal has 1 at the identity class and at every nonsplit (q=1 mod 4) or
/// split (q=3 mod 4) class; non-principal blocks vanish at the identity and
/// carry 1 on both unipotent classes; everything vanishes on the involution
/// class; defect-0 blocks vanish on the split (q=1) / nonsplit (q=3) family
/// and middle blocks on the other one.
bool check_determined_idempotent_entries(const CharTable& table, const BlockSet& bs,
                                         std::string* first_failure = nullptr);

struct BlockSanityReport {
    bool weak_orthogonality_ok = false;  // block sums chi(h) conj(chi(g)) vanish for
                                         // odd-order h, even-order g
    bool involution_sum_ok = false;      // principal-block degree q+1 / q-1 members sum
                                         // to -2, 0, 2, 0 at the involution class per q mod 8
    bool ok = false;
};
BlockSanityReport block_sanity(const CharTable& table, const BlockSet& bs);

struct InducedReport {
    std::vector<int64_t> multiplicities;  // per character row
    int64_t degree_sum = 0;               // must equal |E| = q(q+1)/2
    bool pattern_ok = false;              // trivial 1; Steinberg 2 or 1; full family of
                                          // defect-0 degrees once each; halves per q mod 8
    bool ok = false;
};
InducedReport induced_decomposition(const CharTable& table, const GroupCtx& group);

struct BlockModuleReport {
    std::vector<int64_t> dim_kernel, dim_image, dim_image2, dim_full;
    int64_t kernel_total = 0;
    bool decomposition_ok = false;     // per-block kernel dims match the q mod 4 pattern
    bool annihilation_ok = false;      // the required block components vanish
    bool sums_ok = false;              // block dims add up to the space dims
    bool defect0_char0_ok = false;     // defect-0 rank equals the induced-character rank
    bool scalar_extension_ok = false;  // GF(2) ranks survive extension to GF(2^k)
    bool ok = false;
};
BlockModuleReport block_module_dims(const GroupCtx& group, const CharTable& table,
                                    const BlockSet& bs, const BrauerReduction& red);

}  // namespace conic
