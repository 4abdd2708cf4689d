#include "conic/chartable.hpp"

#include <numeric>
#include <stdexcept>

namespace conic {

int64_t character_conductor(const FieldCtx& field) {
    int64_t lcm = std::lcm(field.q() - 1, field.q() + 1);
    return (field.e() % 2 == 1) ? lcm * field.p() : lcm;
}

CharTable CharTable::build(const GroupCtx& group) {
    int64_t q = group.q();
    if (q < 5) throw std::invalid_argument("character table needs q >= 5");
    const FieldCtx& F = group.field();
    bool q1 = (q % 4 == 1);

    CharTable T;
    T.q_ = q;
    T.order_ = group.order();
    int nc = group.n_classes();
    T.class_sizes_.resize(size_t(nc));
    T.class_orders_.resize(size_t(nc));
    T.class_names_.resize(size_t(nc));
    for (int c = 0; c < nc; ++c) {
        T.class_sizes_[size_t(c)] = group.class_size(c);
        T.class_orders_[size_t(c)] = group.class_element_order(c);
        T.class_names_[size_t(c)] = group.class_name(c);
    }
    T.involution_class_ = group.involution_class();

    int64_t N = character_conductor(F);
    T.ring_ = std::make_shared<Cyclotomic>(N);
    const Cyclotomic& R = *T.ring_;

    int nT = group.theta_count(), nP = group.pi_count();
    int id_c = 0, up_c = 1, um_c = 2;
    int inv_c = group.involution_class();
    auto theta_c = [&](int i) { return 3 + (i - 1); };          // 1-based
    auto pi_c = [&](int k) { return 3 + nT + 1 + (k - 1); };    // 1-based

    int64_t eps = N / (q - 1), dlt = N / (q + 1);
    auto I = [&](int64_t v) { return R.integer(v); };
    auto eps_pair = [&](int64_t j) {  // eps^j + eps^-j
        return R.add(R.root(eps * j), R.root(-eps * j));
    };
    auto dlt_pair = [&](int64_t j) { return R.add(R.root(dlt * j), R.root(-dlt * j)); };

    // sqrt(q) (q = 1 mod 4) or sqrt(-q) (q = 3 mod 4) as a Gauss sum.
    CycInt sq = sqrt_q_cyc(R, F.p(), F.e());
    if (!R.equal(R.mul(sq, sq), I(q1 ? q : -q)))
        throw std::logic_error("Gauss sum square is not +-q");

    auto make_row = [&](std::string name, int64_t deg) {
        CharRow row;
        row.name = std::move(name);
        row.degree = deg;
        row.values.assign(size_t(nc), R.zero());
        return row;
    };

    // principal series, degree q+1
    for (int r = 1; r <= nT; ++r) {
        CharRow row = make_row("principal" + std::to_string(r), q + 1);
        row.values[size_t(id_c)] = I(q + 1);
        row.values[size_t(up_c)] = row.values[size_t(um_c)] = I(1);
        for (int i = 1; i <= nT; ++i) row.values[size_t(theta_c(i))] = eps_pair(int64_t(2) * i * r);
        row.values[size_t(inv_c)] = q1 ? I(r % 2 ? -2 : 2) : I(0);
        for (int k = 1; k <= nP; ++k) row.values[size_t(pi_c(k))] = I(0);
        T.rows_.push_back(std::move(row));
    }
    // Steinberg, degree q
    {
        CharRow row = make_row("steinberg", q);
        row.values[size_t(id_c)] = I(q);
        row.values[size_t(up_c)] = row.values[size_t(um_c)] = I(0);
        for (int i = 1; i <= nT; ++i) row.values[size_t(theta_c(i))] = I(1);
        row.values[size_t(inv_c)] = I(q1 ? 1 : -1);
        for (int k = 1; k <= nP; ++k) row.values[size_t(pi_c(k))] = I(-1);
        T.steinberg_ = int(T.rows_.size());
        T.rows_.push_back(std::move(row));
    }
    // trivial
    {
        CharRow row = make_row("trivial", 1);
        for (int c = 0; c < nc; ++c) row.values[size_t(c)] = I(1);
        T.trivial_ = int(T.rows_.size());
        T.rows_.push_back(std::move(row));
    }
    // discrete series, degree q-1
    for (int s = 1; s <= nP; ++s) {
        CharRow row = make_row("discrete" + std::to_string(s), q - 1);
        row.values[size_t(id_c)] = I(q - 1);
        row.values[size_t(up_c)] = row.values[size_t(um_c)] = I(-1);
        for (int i = 1; i <= nT; ++i) row.values[size_t(theta_c(i))] = I(0);
        row.values[size_t(inv_c)] = q1 ? I(0) : I(s % 2 ? 2 : -2);
        for (int k = 1; k <= nP; ++k)
            row.values[size_t(pi_c(k))] = R.scale(dlt_pair(int64_t(2) * k * s), -1);
        T.rows_.push_back(std::move(row));
    }
    // the two half characters: degree (q+1)/2 splitting the unipotent values
    // (1 ± sqrt(q))/2, or degree (q-1)/2 with (-1 ± sqrt(-q))/2.
    {
        CycInt base = I(q1 ? 1 : -1);
        CycInt vplus = R.div_exact(R.add(base, sq), 2);
        CycInt vminus = R.div_exact(R.sub(base, sq), 2);
        for (int j = 1; j <= 2; ++j) {
            CharRow row = make_row(std::string(q1 ? "half_principal" : "half_discrete") +
                                       std::to_string(j),
                                   q1 ? (q + 1) / 2 : (q - 1) / 2);
            row.values[size_t(id_c)] = I(row.degree);
            row.values[size_t(up_c)] = (j == 1) ? vplus : vminus;
            row.values[size_t(um_c)] = (j == 1) ? vminus : vplus;
            for (int i = 1; i <= nT; ++i)
                row.values[size_t(theta_c(i))] = q1 ? I(i % 2 ? -1 : 1) : I(0);
            row.values[size_t(inv_c)] =
                q1 ? I(((q - 1) / 4) % 2 ? -1 : 1) : I(((q + 5) / 4) % 2 ? -1 : 1);
            for (int k = 1; k <= nP; ++k)
                row.values[size_t(pi_c(k))] = q1 ? I(0) : I(k % 2 ? 1 : -1);
            T.rows_.push_back(std::move(row));
        }
    }

    if (int64_t(T.rows_.size()) != nc)
        throw std::logic_error("character count does not match class count");
    if (!T.verify_orthogonality())
        throw std::logic_error("character table failed exact orthogonality validation");
    return T;
}

std::vector<int> CharTable::rows_of_degree(int64_t d) const {
    std::vector<int> out;
    for (int i = 0; i < n_rows(); ++i)
        if (rows_[size_t(i)].degree == d) out.push_back(i);
    return out;
}

CycInt CharTable::omega(int row, int cls) const {
    const Cyclotomic& R = *ring_;
    CycInt num = R.scale(rows_[size_t(row)].values[size_t(cls)], class_sizes_[size_t(cls)]);
    return R.div_exact(num, rows_[size_t(row)].degree);
}

bool CharTable::verify_orthogonality() const {
    const Cyclotomic& R = *ring_;
    int nc = n_classes();
    int nr = n_rows();
    int64_t sum_sq = 0;
    for (const auto& r : rows_) sum_sq += r.degree * r.degree;
    if (sum_sq != order_) return false;

    for (int i = 0; i < nr; ++i) {
        for (int j = i; j < nr; ++j) {
            CycInt acc = R.zero();
            for (int c = 0; c < nc; ++c) {
                CycInt term = R.mul(rows_[size_t(i)].values[size_t(c)],
                                    R.conj(rows_[size_t(j)].values[size_t(c)]));
                acc = R.add(acc, R.scale(term, class_sizes_[size_t(c)]));
            }
            if (!R.equal(acc, R.integer(i == j ? order_ : 0))) return false;
        }
    }
    for (int c = 0; c < nc; ++c) {
        for (int d = c; d < nc; ++d) {
            CycInt acc = R.zero();
            for (int i = 0; i < nr; ++i)
                acc = R.add(acc, R.mul(rows_[size_t(i)].values[size_t(c)],
                                       R.conj(rows_[size_t(i)].values[size_t(d)])));
            int64_t want = (c == d) ? order_ / class_sizes_[size_t(c)] : 0;
            if (!R.equal(acc, R.integer(want))) return false;
        }
    }
    return true;
}

}  // namespace conic
