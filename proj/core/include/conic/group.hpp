#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "conic/plane.hpp"

namespace conic {

/// Element of the conic-preserving subgroup isomorphic to PSL(2,q), carried as
/// a determinant-1 pair (a,b;c,d) normalized mod sign: the first nonzero entry
/// has discrete log < (q-1)/2.
struct Sl2 {
    std::array<FieldElem, 4> m{};  // a, b, c, d
    friend bool operator==(const Sl2&, const Sl2&) = default;
};

enum class ClassTag : uint8_t {
    Identity,           // the trivial class
    UnipotentPlus,      // unipotent class of (1,0;1,1)
    UnipotentMinus,     // unipotent class of (1,0;xi,1)
    SplitSemisimple,    // trace invariant t with t-4 a nonzero square
    Involution,         // trace invariant 0, all elements of order 2
    NonsplitSemisimple  // trace invariant t with t-4 a nonsquare
};

struct ClassLabel {
    ClassTag tag = ClassTag::Identity;
    int index = 0;  // 1-based for the two semisimple families, else 0
    friend bool operator==(const ClassLabel&, const ClassLabel&) = default;
};

/// Symmetric-square image of an invertible 2x2 matrix (a,b;c,d) as the 3x3
/// collineation preserving the conic. Multiplicative; kills the sign of the
/// input. Throws on singular input.
Mat3 symmetric_square(const FieldCtx& F, FieldElem a, FieldElem b, FieldElem c, FieldElem d);

struct StabilizerReport {
    int64_t order_h = 0;                 // |Stab_H(P)|
    int64_t order_g = 0;                 // |Stab_G(P)|
    std::vector<int64_t> class_counts;   // |Stab_H(P) ∩ C| per class id
    bool profile_ok = false;             // matches the (1,(q±1)/2,0,2,0) pattern
};

struct OrbitReport {
    bool transitive_points = false;      // G transitive on E, I and the conic
    bool transitive_lines = false;       // G transitive on Se, Pa, T
    bool stab_orders_ok = false;         // |Stab_G(P)| = 2(q-1) on externals
    bool k_transitive_polar = false;     // Stab_G(P) transitive on the polar line's
                                         // internal/external/conic point sets
    bool k_transitive_pencils = false;   // and on the secant/passant/tangent pencils of P
    bool k_point_stab_orders = false;    // point stabilizers in K of size 4 / q-1
    bool polar_stab_equal = false;       // Stab_G(P) = Stab_G(polar(P)) setwise
    bool ok = false;
    std::string first_failure;
};

struct CardinalityReport {
    bool regular_on_externals = false;   // #{h : P^h = R} = q-1 for all P,R external
    bool polar_map_counts_ok = false;    // |{h : polar(P)^h = l}| = q-1, secant l
    bool pair_counts_ok = false;         // |{h : polar(P)^h through Q}| = (q-1)^2/2
    bool subset_counts_ok = false;       // |{h : P^h in W}| = (q-1)|W| spot checks
    bool ok = false;
};

struct GroupParityReport {
    // Class-intersection parities of the polar-image sets
    // {h : polar(P)^h is a secant through Q} for all ordered pairs, including
    // P = Q, against the allowed odd classes for each position of Q.
    bool polar_image_ok = false;
    // Same for the orbit-membership sets {h : P^h in W(Q)} with W the closed
    // neighbor set (q = 3 mod 4) or its complement (q = 1 mod 4).
    bool orbit_membership_ok = false;
    int64_t pairs_checked = 0;
    std::string first_failure;
    bool ok = false;
};

/// Enumerates H (the PSL(2,q) copy preserving the conic) together with its
/// conjugacy classes, and the index-2 overgroup G via one extra coset.
/// Immutable after build(); lazy caches are guarded internally.
class GroupCtx {
public:
    static GroupCtx build(std::shared_ptr<const PlaneCtx> plane, int64_t max_q = 31);

    const PlaneCtx& plane() const { return *plane_; }
    const FieldCtx& field() const { return plane_->field(); }
    int64_t q() const { return plane_->q(); }
    int64_t order() const { return int64_t(elems_.size()); }

    const Sl2& sl2(int32_t i) const { return elems_[size_t(i)]; }
    const Mat3& mat3(int32_t i) const { return m3_[size_t(i)]; }
    int32_t identity() const { return id_index_; }
    int32_t index_of(const Sl2& s) const;
    int32_t multiply(int32_t i, int32_t j) const;
    int32_t inverse(int32_t i) const { return inv_[size_t(i)]; }
    int32_t conjugate(int32_t g, int32_t h) const;  // h^-1 g h

    Sl2 normalize(FieldElem a, FieldElem b, FieldElem c, FieldElem d) const;
    FieldElem trace_invariant(int32_t i) const;  // (a+d)^2

    int n_classes() const { return int(class_label_.size()); }
    int class_of(int32_t elem) const { return class_of_[size_t(elem)]; }
    ClassLabel class_label(int cid) const { return class_label_[size_t(cid)]; }
    std::string class_name(int cid) const;
    int32_t class_rep(int cid) const { return class_rep_[size_t(cid)]; }
    int64_t class_size(int cid) const { return int64_t(class_members_[size_t(cid)].size()); }
    std::span<const int32_t> class_members(int cid) const { return class_members_[size_t(cid)]; }
    int64_t class_element_order(int cid) const { return class_order_[size_t(cid)]; }
    int class_id(ClassLabel lab) const;
    int theta_count() const { return theta_n_; }
    int pi_count() const { return pi_n_; }
    int involution_class() const { return class_id({ClassTag::Involution, 0}); }

    /// c[(i*nc + j)*nc + k] = #{x in C_i : x^-1 z_k in C_j} for a fixed z_k.
    const std::vector<int64_t>& structure_constants() const;

    Mat3 coset_extra() const;  // diag(1, xi^-1, xi^-2); G = H ∪ extra·H

    int32_t act_point(int32_t elem, int32_t point) const {
        return plane_->act_point(m3_[size_t(elem)], point);
    }
    /// Permutation induced on external-point ordinals.
    std::span<const int32_t> external_perm(int32_t elem) const;

    std::vector<int32_t> stab_h(int32_t point) const;   // element ids fixing the point
    StabilizerReport stabilizers(int32_t point) const;  // throws unless external
    OrbitReport orbit_checks() const;
    CardinalityReport intersection_cardinalities() const;
    GroupParityReport parity_profile() const;

    std::vector<int32_t> polar_image_set(int32_t P, int32_t secant_line) const;
    std::vector<int32_t> polar_pencil_set(int32_t P, int32_t Q) const;
    std::vector<int32_t> orbit_subset_set(int32_t P, std::span<const char> member_of_e) const;

private:
    GroupCtx() = default;
    void classify();
    void ensure_perms() const;
    uint64_t sl2_key(const Sl2&) const;

    std::shared_ptr<const PlaneCtx> plane_;
    std::vector<Sl2> elems_;
    std::vector<Mat3> m3_;
    std::unordered_map<uint64_t, int32_t> index_;
    std::vector<int32_t> inv_;
    int32_t id_index_ = 0;
    int theta_n_ = 0, pi_n_ = 0;

    std::vector<ClassLabel> class_label_;
    std::vector<int32_t> class_rep_;
    std::vector<std::vector<int32_t>> class_members_;
    std::vector<int64_t> class_order_;
    std::vector<int32_t> class_of_;

    struct LazyState {
        std::once_flag perm_once;
        std::vector<int32_t> eperm;  // order x n_external
        std::once_flag struct_once;
        std::vector<int64_t> structc;
    };
    std::unique_ptr<LazyState> lazy_ = std::make_unique<LazyState>();
};

}  // namespace conic
