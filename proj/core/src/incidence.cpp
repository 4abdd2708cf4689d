#include "conic/incidence.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace conic {

IncidencePartition build_partition(const PlaneCtx& plane) {
    IncidencePartition part;
    auto push_all = [](std::vector<int32_t>& dst, std::span<const int32_t> src) {
        dst.insert(dst.end(), src.begin(), src.end());
    };
    push_all(part.row_lines, plane.tangent_lines());
    push_all(part.row_lines, plane.passant_lines());
    push_all(part.row_lines, plane.secant_lines());
    push_all(part.col_points, plane.conic_points());
    push_all(part.col_points, plane.internal_points());
    push_all(part.col_points, plane.external_points());

    int64_t n = plane.n();
    std::vector<int32_t> col_of(size_t(n), -1);
    for (size_t j = 0; j < part.col_points.size(); ++j) col_of[size_t(part.col_points[j])] = int32_t(j);

    part.full = BitMatrix(n, n);
    for (int64_t r = 0; r < n; ++r) {
        int32_t L = part.row_lines[size_t(r)];
        for (int32_t P : plane.points_on_line(L)) part.full.set(r, col_of[size_t(P)], true);
    }

    std::array<int64_t, 4> row_off = {0, int64_t(plane.tangent_lines().size()),
                                      int64_t(plane.tangent_lines().size() + plane.passant_lines().size()), n};
    std::array<int64_t, 4> col_off = {0, int64_t(plane.conic_points().size()),
                                      int64_t(plane.conic_points().size() + plane.internal_points().size()), n};
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            BitMatrix blk(row_off[size_t(i) + 1] - row_off[size_t(i)],
                          col_off[size_t(j) + 1] - col_off[size_t(j)]);
            for (int64_t r = row_off[size_t(i)]; r < row_off[size_t(i) + 1]; ++r)
                for (int64_t c = col_off[size_t(j)]; c < col_off[size_t(j) + 1]; ++c)
                    if (part.full.get(r, c)) blk.set(r - row_off[size_t(i)], c - col_off[size_t(j)], true);
            part.block[size_t(i)][size_t(j)] = std::move(blk);
        }
    }
    return part;
}

BitMatrix build_B(const PlaneCtx& plane) {
    auto ext = plane.external_points();
    int64_t ne = int64_t(ext.size());
    BitMatrix B(ne, ne);
    for (int64_t i = 0; i < ne; ++i) {
        int32_t perp = plane.polarity_point(ext[size_t(i)]);
        for (int32_t P : plane.points_on_line(perp)) {
            int32_t j = plane.external_ordinal(P);
            if (j >= 0) B.set(i, j, true);
        }
    }
    return B;
}

BitMatrix build_C(const PlaneCtx& plane) {
    BitMatrix B = build_B(plane);
    return B.pow(4) + BitMatrix::identity(B.rows());
}

BitMatrix build_D(const PlaneCtx& plane) {
    BitMatrix B = build_B(plane);
    return B.pow(4) + BitMatrix::identity(B.rows()) + BitMatrix::all_ones(B.rows());
}

PowerIdentityReport verify_power_identity(const BitMatrix& B) {
    PowerIdentityReport rep;
    BitMatrix B2 = B * B;
    BitMatrix B3 = B2 * B;
    rep.b3_eq = (B3 == B);
    rep.b5_ok = (B3 * B2 == B);
    return rep;
}

PowerIdentityReport verify_power_identity(const PlaneCtx& plane) {
    return verify_power_identity(build_B(plane));
}

NeighborSets neighbor_sets(const PlaneCtx& plane, int32_t P) {
    if (plane.point_class(P) != PointClass::External)
        throw std::invalid_argument("neighbor sets need an external point");
    int64_t q = plane.q();
    int64_t ne = int64_t(plane.external_points().size());
    std::vector<char> in_sec(size_t(ne), 0), in_tan(size_t(ne), 0);
    for (int32_t L : plane.lines_through_point(P)) {
        LineClass lc = plane.line_class(L);
        if (lc == LineClass::Passant) continue;
        for (int32_t Q : plane.points_on_line(L)) {
            int32_t j = plane.external_ordinal(Q);
            if (j < 0) continue;
            if (lc == LineClass::Secant) in_sec[size_t(j)] = 1;
            else in_tan[size_t(j)] = 1;
        }
    }
    int32_t self = plane.external_ordinal(P);
    in_tan[size_t(self)] = 0;                       // tangent neighbors exclude P
    if (q % 4 == 1) in_sec[size_t(self)] = 0;       // secant neighbors keep P only for q = 3 mod 4

    std::vector<char> closed(size_t(ne), 0);
    switch (q % 8) {
        case 1:
            for (int64_t j = 0; j < ne; ++j) closed[size_t(j)] = in_sec[size_t(j)] | in_tan[size_t(j)];
            closed[size_t(self)] = 1;
            break;
        case 5:
            for (int64_t j = 0; j < ne; ++j) closed[size_t(j)] = in_sec[size_t(j)];
            closed[size_t(self)] = 1;
            break;
        case 7:
            for (int64_t j = 0; j < ne; ++j) closed[size_t(j)] = in_sec[size_t(j)] | in_tan[size_t(j)];
            closed[size_t(self)] = 0;
            break;
        case 3:
            for (int64_t j = 0; j < ne; ++j) closed[size_t(j)] = in_sec[size_t(j)];
            closed[size_t(self)] = 0;
            break;
        default:
            throw std::logic_error("even q");
    }

    NeighborSets out;
    for (int64_t j = 0; j < ne; ++j) {
        if (in_sec[size_t(j)]) out.secant_neighbors.push_back(int32_t(j));
        if (in_tan[size_t(j)]) out.tangent_neighbors.push_back(int32_t(j));
        if (closed[size_t(j)]) out.closed.push_back(int32_t(j));
        else out.complement.push_back(int32_t(j));
    }
    return out;
}

BitMatrix named_matrix(const PlaneCtx& plane, const std::string& id) {
    if (id == "A") return build_partition(plane).full;
    if (id == "B") return build_B(plane);
    if (id == "C") return build_C(plane);
    if (id == "D") return build_D(plane);
    if (id.size() == 3 && id[0] == 'A' && id[1] >= '1' && id[1] <= '3' && id[2] >= '1' &&
        id[2] <= '3') {
        auto part = build_partition(plane);
        return part.block[size_t(id[1] - '1')][size_t(id[2] - '1')];
    }
    throw std::invalid_argument("unknown matrix id: " + id);
}

CodeReport code_dims(const PlaneCtx& plane, const std::string& matrix_id) {
    BitMatrix m = named_matrix(plane, matrix_id);
    CodeReport rep;
    rep.matrix_id = matrix_id;
    rep.q = plane.q();
    rep.n = m.cols();
    rep.k = m.cols() - m.rank();
    return rep;
}

std::vector<CodeReport> code_dims_all(const PlaneCtx& plane) {
    std::vector<CodeReport> out;
    for (const char* id : {"A22", "A23", "A32", "A33"}) out.push_back(code_dims(plane, id));
    return out;
}

DirectSumReport direct_sum_checks(const PlaneCtx& plane) {
    DirectSumReport rep;
    BitMatrix B = build_B(plane);
    int64_t ne = B.rows();
    rep.rank_b = B.rank();
    BitMatrix null_basis = B.nullspace_basis();
    rep.nullity_b = null_basis.rows();
    BitMatrix row_basis = B.row_space_basis();
    rep.row_null_intersection = rowspace_intersection_dim(row_basis, null_basis);

    if (plane.q() % 4 == 1) {
        rep.split_checked = true;
        BitMatrix D = build_D(plane);
        BitMatrix jrow(1, ne);
        for (int64_t j = 0; j < ne; ++j) jrow.set(0, j, true);
        rep.allones_in_null = (jrow * B).is_zero();
        BitMatrix d_basis = D.row_space_basis();
        rep.allones_outside_d = !rowspace_contains(d_basis, jrow);
        rep.d_rows_in_null = (D * B).is_zero();
        rep.null_dim_matches = (rep.nullity_b == 1 + d_basis.rows());
        rep.ok = rep.rank_b + rep.nullity_b == ne && rep.row_null_intersection == 0 &&
                 rep.allones_in_null && rep.allones_outside_d && rep.d_rows_in_null &&
                 rep.null_dim_matches;
    } else {
        rep.ok = rep.rank_b + rep.nullity_b == ne && rep.row_null_intersection == 0;
    }
    return rep;
}

GeometryParityReport parity_checks(const PlaneCtx& plane) {
    GeometryParityReport rep;
    int64_t q = plane.q();
    bool odd_tangent_case = (q % 8 == 1 || q % 8 == 7);
    auto fail = [&](const std::string& m) {
        if (rep.first_failure.empty()) rep.first_failure = m;
    };

    // Secant pencil parities. For secant l with polar point Pp, an external P
    // off l (and != Pp) is classified by the line joining P and Pp.
    for (int32_t L : plane.secant_lines()) {
        int32_t Pp = plane.polarity_line(L);
        for (int32_t P : plane.external_points()) {
            if (P == Pp || plane.incident(P, L)) continue;
            int64_t count = 0;
            for (int32_t L1 : plane.lines_through_point(P)) {
                if (plane.line_class(L1) != LineClass::Secant) continue;
                if (plane.point_class(plane.meet(L1, L)) == PointClass::External) ++count;
            }
            LineClass pos = plane.line_class(plane.join(P, Pp));
            bool odd = count & 1;
            bool expect_odd = (pos == LineClass::Tangent) ? odd_tangent_case : false;
            if (odd != expect_odd) {
                std::ostringstream os;
                os << "secant pencil parity failed at P=" << P << " l=" << L;
                fail(os.str());
            }
            ++rep.pencil_pairs;
        }
    }
    rep.secant_pencil_ok = rep.first_failure.empty();

    // Neighbor intersection parities over all pairs of distinct externals.
    auto ext = plane.external_points();
    int64_t ne = int64_t(ext.size());
    BitMatrix nbr(ne, ne);
    for (int64_t i = 0; i < ne; ++i)
        for (int32_t j : neighbor_sets(plane, ext[size_t(i)]).secant_neighbors)
            nbr.set(i, j, true);
    bool nbr_ok = true;
    for (int64_t i = 0; i < ne; ++i) {
        for (int64_t j = i + 1; j < ne; ++j) {
            int64_t inter = 0;
            auto ri = nbr.row(i);
            auto rj = nbr.row(j);
            for (size_t w = 0; w < ri.size(); ++w) inter += std::popcount(ri[w] & rj[w]);
            LineClass lc = plane.line_class(plane.join(ext[size_t(i)], ext[size_t(j)]));
            bool expect_odd = lc == LineClass::Secant    ? true
                              : lc == LineClass::Passant ? false
                                                         : odd_tangent_case;
            if (bool(inter & 1) != expect_odd) {
                nbr_ok = false;
                std::ostringstream os;
                os << "neighbor intersection parity failed at pair (" << i << "," << j << ")";
                fail(os.str());
            }
            ++rep.neighbor_pairs;
        }
    }
    rep.neighbor_intersection_ok = nbr_ok;
    rep.ok = rep.secant_pencil_ok && rep.neighbor_intersection_ok;
    return rep;
}

void export_alist(const BitMatrix& m, std::ostream& os) {
    int64_t nrows = m.rows(), ncols = m.cols();
    std::vector<std::vector<int64_t>> col_idx, row_idx;
    col_idx.resize(size_t(ncols));
    row_idx.resize(size_t(nrows));
    for (int64_t r = 0; r < nrows; ++r)
        for (int64_t c = 0; c < ncols; ++c)
            if (m.get(r, c)) {
                col_idx[size_t(c)].push_back(r + 1);
                row_idx[size_t(r)].push_back(c + 1);
            }
    int64_t max_col = 0, max_row = 0;
    for (auto& v : col_idx) max_col = std::max<int64_t>(max_col, int64_t(v.size()));
    for (auto& v : row_idx) max_row = std::max<int64_t>(max_row, int64_t(v.size()));

    os << ncols << " " << nrows << "\n";
    os << max_col << " " << max_row << "\n";
    for (int64_t c = 0; c < ncols; ++c) os << col_idx[size_t(c)].size() << (c + 1 < ncols ? " " : "\n");
    for (int64_t r = 0; r < nrows; ++r) os << row_idx[size_t(r)].size() << (r + 1 < nrows ? " " : "\n");
    for (auto& v : col_idx) {
        for (size_t i = 0; i < v.size(); ++i) os << v[i] << (i + 1 < v.size() ? " " : "");
        os << "\n";
    }
    for (auto& v : row_idx) {
        for (size_t i = 0; i < v.size(); ++i) os << v[i] << (i + 1 < v.size() ? " " : "");
        os << "\n";
    }
}

void export_alist(const BitMatrix& m, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    export_alist(m, f);
    if (!f) throw std::runtime_error("write failed: " + path);
}

BitMatrix import_alist(std::istream& is) {
    int64_t ncols = 0, nrows = 0, max_col = 0, max_row = 0;
    if (!(is >> ncols >> nrows >> max_col >> max_row))
        throw std::runtime_error("alist: bad header");
    std::vector<int64_t> col_deg(size_t(ncols), 0);
    std::vector<int64_t> row_deg(size_t(nrows), 0);
    for (auto& d : col_deg) is >> d;
    for (auto& d : row_deg) is >> d;
    if (!is) throw std::runtime_error("alist: bad degree lists");
    BitMatrix m(nrows, ncols);
    for (int64_t c = 0; c < ncols; ++c) {
        for (int64_t k = 0; k < col_deg[size_t(c)]; ++k) {
            int64_t r;
            if (!(is >> r) || r < 1 || r > nrows) throw std::runtime_error("alist: bad row index");
            m.set(r - 1, c, true);
        }
    }
    for (int64_t r = 0; r < nrows; ++r) {
        for (int64_t k = 0; k < row_deg[size_t(r)]; ++k) {
            int64_t c;
            if (!(is >> c) || c < 1 || c > ncols) throw std::runtime_error("alist: bad col index");
            if (!m.get(r, c - 1)) throw std::runtime_error("alist: row/col lists disagree");
        }
    }
    return m;
}

BitMatrix import_alist_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open: " + path);
    return import_alist(f);
}

}  // namespace conic
