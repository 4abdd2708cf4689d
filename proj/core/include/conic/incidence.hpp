#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "conic/bitmatrix.hpp"
#include "conic/plane.hpp"

namespace conic {

/// The full line-point incidence matrix with rows grouped as tangent, passant,
/// secant lines and columns as absolute, internal, external points (each group
/// in the canonical plane order), plus the nine induced blocks. block[i][j]
/// holds rows of line group i against columns of point group j.
struct IncidencePartition {
    BitMatrix full;
    std::array<std::array<BitMatrix, 3>, 3> block;
    std::vector<int32_t> row_lines;   // line ids in row order
    std::vector<int32_t> col_points;  // point ids in column order
};

IncidencePartition build_partition(const PlaneCtx& plane);

/// Polar incidence matrix on external points: rows and columns are both
/// indexed by the external points in canonical order, entry (i,j) set iff
/// P_j lies on the polar line of P_i. Symmetric; equals the secant/external
/// block of the partition up to a row permutation.
BitMatrix build_B(const PlaneCtx& plane);

BitMatrix build_C(const PlaneCtx& plane);  // B^4 + I
BitMatrix build_D(const PlaneCtx& plane);  // B^4 + I + J

struct PowerIdentityReport {
    bool b5_ok = false;  // B^5 == B
    bool b3_eq = false;  // B^3 == B
};
PowerIdentityReport verify_power_identity(const PlaneCtx& plane);
PowerIdentityReport verify_power_identity(const BitMatrix& B);

/// Neighbor sets of an external point, as ordinals into the external list:
///   secant_neighbors: externals on secants through P (P itself kept only for
///                     q = 3 mod 4);
///   tangent_neighbors: externals other than P on the tangents through P;
///   closed: the q mod 8 adjusted set whose characteristic vector is row P of
///           B^4 + I;
///   complement: externals outside `closed`.
struct NeighborSets {
    std::vector<int32_t> secant_neighbors;
    std::vector<int32_t> tangent_neighbors;
    std::vector<int32_t> closed;
    std::vector<int32_t> complement;
};
NeighborSets neighbor_sets(const PlaneCtx& plane, int32_t P);

struct CodeReport {
    std::string matrix_id;
    int64_t q = 0;
    int64_t n = 0;  // code length = number of columns
    int64_t k = 0;  // GF(2) nullspace dimension
};
CodeReport code_dims(const PlaneCtx& plane, const std::string& matrix_id);
std::vector<CodeReport> code_dims_all(const PlaneCtx& plane);

/// Returns the named matrix: one of A, A11..A33, B, C, D.
BitMatrix named_matrix(const PlaneCtx& plane, const std::string& id);

struct DirectSumReport {
    int64_t rank_b = 0, nullity_b = 0;
    int64_t row_null_intersection = 0;  // dim(rowspace(B) ∩ nullspace(B))
    bool split_checked = false;         // q = 1 mod 4 refinement below
    bool allones_in_null = false;       // J-hat lies in null(B)
    bool allones_outside_d = false;     // J-hat not in rowspace(D)
    bool d_rows_in_null = false;        // rowspace(D) ⊆ null(B)
    bool null_dim_matches = false;      // nullity(B) == 1 + rank(D)
    bool ok = false;
};
DirectSumReport direct_sum_checks(const PlaneCtx& plane);

struct GeometryParityReport {
    // Parity of the number of secants through P meeting a secant l in an
    // external point, checked for every external P off l against the position
    // of P relative to the polar point of l.
    bool secant_pencil_ok = false;
    // Parity of |N(P1) ∩ N(P2)| for all pairs of distinct external points,
    // split by the type of the joining line.
    bool neighbor_intersection_ok = false;
    int64_t pencil_pairs = 0, neighbor_pairs = 0;
    std::string first_failure;
    bool ok = false;
};
GeometryParityReport parity_checks(const PlaneCtx& plane);

/// MacKay alist serialization: "n m" header with columns (variable nodes)
/// first, max degrees, per-column and per-row degree lists, then 1-based
/// per-column row indices and per-row column indices.
void export_alist(const BitMatrix& m, std::ostream& os);
void export_alist(const BitMatrix& m, const std::string& path);
BitMatrix import_alist(std::istream& is);
BitMatrix import_alist_file(const std::string& path);

}  // namespace conic
