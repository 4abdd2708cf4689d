#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "conic/cyclotomic.hpp"
#include "conic/group.hpp"

namespace conic {

struct CharRow {
    std::string name;
    int64_t degree = 0;
    std::vector<CycInt> values;  // indexed by class id, canonical class order
};

/// Root-of-unity order hosting every table entry: lcm(q-1, q+1), times p when
/// the extension degree is odd (the quadratic Gauss sum needs zeta_p).
int64_t character_conductor(const FieldCtx& field);

/// Exact ordinary character table of the PSL(2,q) copy, over Z[zeta_N] with
/// N = lcm(q-1, q+1) (times p for odd extension degree, to host the quadratic
/// Gauss sum). Row order: principal series (degree q+1), Steinberg, trivial,
/// discrete series (degree q-1), then the two half characters of degree
/// (q±1)/2. Construction validates both orthogonality relations exactly and
/// throws if they fail.
class CharTable {
public:
    static CharTable build(const GroupCtx& group);

    int64_t q() const { return q_; }
    int64_t group_order() const { return order_; }
    int64_t conductor() const { return ring_->n(); }
    const Cyclotomic& ring() const { return *ring_; }

    int n_rows() const { return int(rows_.size()); }
    const CharRow& row(int i) const { return rows_[size_t(i)]; }
    int trivial_index() const { return trivial_; }
    int steinberg_index() const { return steinberg_; }
    std::vector<int> rows_of_degree(int64_t d) const;

    int n_classes() const { return int(class_sizes_.size()); }
    int64_t class_size(int c) const { return class_sizes_[size_t(c)]; }
    int64_t class_order(int c) const { return class_orders_[size_t(c)]; }
    std::string class_name(int c) const { return class_names_[size_t(c)]; }
    int involution_class() const { return involution_class_; }

    /// Central character value |C| * chi(x_C) / chi(1); exact, throws if the
    /// division is not integral.
    CycInt omega(int row, int cls) const;

    /// Re-checks both orthogonality relations and the degree-square sum.
    bool verify_orthogonality() const;

private:
    CharTable() = default;
    int64_t q_ = 0, order_ = 0;
    std::shared_ptr<Cyclotomic> ring_;
    std::vector<CharRow> rows_;
    int trivial_ = -1, steinberg_ = -1;
    std::vector<int64_t> class_sizes_;
    std::vector<int64_t> class_orders_;
    std::vector<std::string> class_names_;
    int involution_class_ = -1;
};

}  // namespace conic
