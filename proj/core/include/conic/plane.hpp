#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "conic/field.hpp"

namespace conic {

using Triple = std::array<FieldElem, 3>;

enum class PointClass : uint8_t { Internal, Absolute, External };
enum class LineClass : uint8_t { Passant, Tangent, Secant };

const char* to_string(PointClass c);
const char* to_string(LineClass c);

/// 3x3 matrix over GF(q), row-major.
struct Mat3 {
    std::array<FieldElem, 9> a{};
    FieldElem& at(int r, int c) { return a[size_t(r) * 3 + c]; }
    FieldElem at(int r, int c) const { return a[size_t(r) * 3 + c]; }
    friend bool operator==(const Mat3&, const Mat3&) = default;
};

Mat3 mat3_identity(const FieldCtx& F);
Mat3 mat3_mul(const FieldCtx& F, const Mat3& A, const Mat3& B);
FieldElem mat3_det(const FieldCtx& F, const Mat3& A);
Mat3 mat3_adjugate(const FieldCtx& F, const Mat3& A);  // inverse up to the det scalar
Mat3 mat3_diag(const FieldCtx& F, FieldElem a, FieldElem b, FieldElem c);

struct PlaneCensus {
    int64_t internal_points = 0, absolute_points = 0, external_points = 0;
    int64_t passant_lines = 0, tangent_lines = 0, secant_lines = 0;
};

struct IncidenceTableReport {
    bool ok = false;
    int64_t lines_checked = 0, points_checked = 0;
    std::string first_failure;
};

/// PG(2,q) with the standard conic {(1,t,t^2)} ∪ {(0,0,1)} cut out by
/// X1^2 - X0*X2. Points and lines are homogeneous triples normalized so the
/// first nonzero coordinate is 1, globally ordered by the integer encodings
/// of their normalized triples. Immutable after build().
class PlaneCtx {
public:
    static PlaneCtx build(std::shared_ptr<const FieldCtx> field);

    const FieldCtx& field() const { return *field_; }
    std::shared_ptr<const FieldCtx> field_ptr() const { return field_; }
    int64_t q() const { return field_->q(); }
    int32_t n() const { return int32_t(points_.size()); }  // = q^2+q+1 points and lines

    const Triple& point(int32_t i) const { return points_[size_t(i)]; }
    const Triple& line(int32_t i) const { return points_[size_t(i)]; }  // same normalized triples

    Triple normalize(const Triple& t) const;  // throws on the zero triple
    int32_t locate_point(const Triple& raw) const;
    int32_t locate_line(const Triple& raw) const;

    bool incident(int32_t P, int32_t L) const {
        const FieldCtx& F = *field_;
        const Triple& a = points_[size_t(P)];
        const Triple& b = points_[size_t(L)];
        FieldElem s = F.add(F.add(F.mul(a[0], b[0]), F.mul(a[1], b[1])), F.mul(a[2], b[2]));
        return s.v == 0;
    }

    PointClass point_class(int32_t P) const { return pclass_[size_t(P)]; }
    LineClass line_class(int32_t L) const { return lclass_[size_t(L)]; }

    std::span<const int32_t> points_on_line(int32_t L) const;
    std::span<const int32_t> lines_through_point(int32_t P) const;

    std::span<const int32_t> conic_points() const { return absolute_; }
    std::span<const int32_t> internal_points() const { return internal_; }
    std::span<const int32_t> external_points() const { return external_; }
    std::span<const int32_t> tangent_lines() const { return tangent_; }
    std::span<const int32_t> passant_lines() const { return passant_; }
    std::span<const int32_t> secant_lines() const { return secant_; }

    /// Ordinal of P within its class list, -1 when P is not in that class.
    int32_t external_ordinal(int32_t P) const { return ext_ord_[size_t(P)]; }
    int32_t internal_ordinal(int32_t P) const { return int_ord_[size_t(P)]; }
    int32_t absolute_ordinal(int32_t P) const { return abs_ord_[size_t(P)]; }
    int32_t secant_ordinal(int32_t L) const { return sec_ord_[size_t(L)]; }
    int32_t passant_ordinal(int32_t L) const { return pas_ord_[size_t(L)]; }
    int32_t tangent_ordinal(int32_t L) const { return tan_ord_[size_t(L)]; }

    /// Polarity induced by the conic: (x,y,z) -> [z,-2y,x] and its inverse on
    /// lines. An involution that swaps point and line classes.
    int32_t polarity_point(int32_t P) const { return ppol_[size_t(P)]; }
    int32_t polarity_line(int32_t L) const { return lpol_[size_t(L)]; }

    int32_t act_point(const Mat3& g, int32_t P) const;          // row vector * g
    int32_t act_line(const Mat3& g, int32_t L) const;           // adj(g) * column vector
    int32_t act_line_pre(const Mat3& adj_g, int32_t L) const;   // with adjugate precomputed

    /// Line through two distinct points / meet of two distinct lines.
    int32_t join(int32_t P1, int32_t P2) const;
    int32_t meet(int32_t L1, int32_t L2) const;

    PlaneCensus census() const;
    IncidenceTableReport verify_incidence_tables() const;

    /// Class of the meet of the polar line of P with l, for P not on the conic,
    /// l non-tangent, P on l, polar(P) != l. Throws on precondition violation.
    PointClass perp_meet_class(int32_t P, int32_t L) const;

private:
    PlaneCtx() = default;
    uint64_t key(const Triple& t) const;

    std::shared_ptr<const FieldCtx> field_;
    std::vector<Triple> points_;
    std::unordered_map<uint64_t, int32_t> index_;
    std::vector<PointClass> pclass_;
    std::vector<LineClass> lclass_;
    std::vector<int32_t> absolute_, internal_, external_;
    std::vector<int32_t> tangent_, passant_, secant_;
    std::vector<int32_t> ext_ord_, int_ord_, abs_ord_, sec_ord_, pas_ord_, tan_ord_;
    std::vector<int32_t> ppol_, lpol_;
    std::vector<int32_t> on_line_;       // n blocks of q+1
    std::vector<int32_t> through_pt_;    // n blocks of q+1
};

}  // namespace conic
