// Operator-closed equivalence relations on the simplices of a finite
// simplicial set, and the quotients they define.
#pragma once

#include <algorithm>
#include <bit>
#include <memory>
#include <unordered_map>
#include <utility>
#include <vector>

#include "forge/simplicial_set.hpp"

namespace forge {

/// Dense numbering of every simplex of degree <= max_degree, with the face,
/// degeneracy and vertex actions precomputed as index tables.
class SimplexTable {
public:
    SimplexTable(SimplicialSet x, int max_degree) : space_(std::move(x)), max_degree_(max_degree)
    {
        const int ncells = space_.num_cells();
        degree_start_.assign(max_degree_ + 2, 0);
        cell_start_.assign(max_degree_ + 1, std::vector<int>(ncells, -1));
        int next = 0;
        for (int q = 0; q <= max_degree_; ++q) {
            degree_start_[q] = next;
            for (CellId c = 0; c < ncells; ++c) {
                const int d = space_.dim(c);
                if (d > q)
                    continue;
                cell_start_[q][c] = next;
                for_each_subset(q, q - d, [&](Mask rep) {
                    cells_.push_back(c);
                    repeats_.push_back(rep);
                    degree_.push_back(static_cast<std::uint8_t>(q));
                    ++next;
                });
            }
        }
        degree_start_[max_degree_ + 1] = next;

        action_start_.resize(next + 1);
        int acc = 0;
        for (int s = 0; s < next; ++s) {
            action_start_[s] = acc;
            const int q = degree_[s];
            acc += (q > 0 ? q + 1 : 0) + (q < max_degree_ ? q + 1 : 0);
        }
        action_start_[next] = acc;
        actions_.resize(acc);
        vertex_start_.resize(next + 1);
        acc = 0;
        for (int s = 0; s < next; ++s) {
            vertex_start_[s] = acc;
            acc += degree_[s] + 1;
        }
        vertex_start_[next] = acc;
        vertices_.resize(acc);
        for (int s = 0; s < next; ++s) {
            const int q = degree_[s];
            const Simplex sx = simplex(s);
            int* out = actions_.data() + action_start_[s];
            if (q > 0)
                for (int i = 0; i <= q; ++i)
                    *out++ = index(space_.eval(sx, make_face(i, q)));
            if (q < max_degree_)
                for (int i = 0; i <= q; ++i) {
                    const Mask rep = repeats_[s];
                    const Mask low = rep & ((Mask{1} << i) - 1);
                    *out++ = index_of(cells_[s], q + 1, low | (Mask{1} << i) | ((rep >> i) << (i + 1)));
                }
            for (int j = 0; j <= q; ++j)
                vertices_[vertex_start_[s] + j] =
                    cell_start_[0][space_.face_of_cell(cells_[s], Mask{1} << sx.degen[j]).cell];
        }
    }

    const SimplicialSet& space() const { return space_; }
    int max_degree() const { return max_degree_; }
    int size() const { return static_cast<int>(cells_.size()); }
    int degree(int s) const { return degree_[s]; }
    int degree_begin(int q) const { return degree_start_[q]; }
    int degree_end(int q) const { return degree_start_[q + 1]; }
    bool is_degenerate(int s) const { return repeats_[s] != 0; }
    CellId cell(int s) const { return cells_[s]; }

    Simplex simplex(int s) const { return {cells_[s], degen_from_repeats(degree_[s], repeats_[s])}; }

    int index(const Simplex& s) const { return index_of(s.cell, s.degree(), s.degen.repeat_mask()); }

    int cell_index(CellId c) const { return cell_start_[space_.dim(c)][c]; }

    /// Index of s * delta_i (degree > 0).
    int face(int s, int i) const { return actions_[action_start_[s] + i]; }

    /// Index of s * sigma_i (degree < max_degree).
    int degen(int s, int i) const
    {
        const int q = degree_[s];
        return actions_[action_start_[s] + (q > 0 ? q + 1 : 0) + i];
    }

    int num_faces(int s) const { return degree_[s] > 0 ? degree_[s] + 1 : 0; }
    int num_degens(int s) const { return degree_[s] < max_degree_ ? degree_[s] + 1 : 0; }

    /// Vertex j of s, as a degree-0 index.
    int vertex(int s, int j) const { return vertices_[vertex_start_[s] + j]; }

private:
    int index_of(CellId c, int q, Mask rep) const
    {
        int base = cell_start_.at(q).at(c);
        if (base < 0)
            throw std::out_of_range("simplex not in table");
        std::size_t rank = 0;
        int k = 1;
        for (Mask m = rep; m; m &= m - 1, ++k)
            rank += binomial(std::countr_zero(m), k);
        return base + static_cast<int>(rank);
    }

    SimplicialSet space_;
    int max_degree_;
    std::vector<int> degree_start_;
    std::vector<std::vector<int>> cell_start_;
    std::vector<CellId> cells_;
    std::vector<Mask> repeats_;
    std::vector<std::uint8_t> degree_;
    std::vector<int> action_start_;
    std::vector<int> actions_;
    std::vector<int> vertex_start_;
    std::vector<int> vertices_;
};

/// Union-find over a SimplexTable, closed under all face and degeneracy
/// operators after every merge. Pairs of degree <= dim X are enough: a map
/// out of X is determined by its values on cells.
class Congruence {
public:
    explicit Congruence(const SimplicialSet& x)
        : Congruence(std::make_shared<const SimplexTable>(x, std::max(x.dimension(), 0)))
    {
    }

    explicit Congruence(std::shared_ptr<const SimplexTable> table)
        : table_(std::move(table)), parent_(table_->size())
    {
        for (int i = 0; i < table_->size(); ++i)
            parent_[i] = i;
    }

    const SimplicialSet& space() const { return table_->space(); }
    const SimplexTable& table() const { return *table_; }
    std::shared_ptr<const SimplexTable> shared_table() const { return table_; }

    int find(int s) const
    {
        while (parent_[s] != s)
            s = parent_[s];
        return s;
    }

    int find(int s)
    {
        int root = s;
        while (parent_[root] != root)
            root = parent_[root];
        while (parent_[s] != root) {
            const int next = parent_[s];
            parent_[s] = root;
            s = next;
        }
        return root;
    }

    bool equivalent(int a, int b) const { return find(a) == find(b); }
    bool equivalent(const Simplex& a, const Simplex& b) const
    {
        return equivalent(table_->index(a), table_->index(b));
    }

    /// Merges the two simplices and restores operator closure. Returns
    /// false if they were already equivalent.
    bool merge(int a, int b)
    {
        if (table_->degree(a) != table_->degree(b))
            throw std::invalid_argument("congruence: cannot merge simplices of different degree");
        if (find(a) == find(b))
            return false;
        std::vector<std::pair<int, int>> work{{a, b}};
        while (!work.empty()) {
            auto [x, y] = work.back();
            work.pop_back();
            int rx = find(x), ry = find(y);
            if (rx == ry)
                continue;
            if (ry < rx)
                std::swap(rx, ry);
            parent_[ry] = rx;
            ++merges_;
            for (int i = 0; i < table_->num_faces(x); ++i)
                work.emplace_back(table_->face(x, i), table_->face(y, i));
            for (int i = 0; i < table_->num_degens(x); ++i)
                work.emplace_back(table_->degen(x, i), table_->degen(y, i));
        }
        return true;
    }

    bool merge(const Simplex& a, const Simplex& b) { return merge(table_->index(a), table_->index(b)); }

    /// Number of successful unions so far.
    long merges() const { return merges_; }

    /// Class labels: each simplex is labelled by the smallest index in its class.
    std::vector<int> labels() const
    {
        const int n = table_->size();
        std::vector<int> root_min(n, -1);
        std::vector<int> out(n);
        for (int s = 0; s < n; ++s) {
            const int r = find(s);
            if (root_min[r] < 0)
                root_min[r] = s;
            out[s] = root_min[r];
        }
        return out;
    }

    int num_classes() const
    {
        int k = 0;
        for (int s = 0; s < table_->size(); ++s)
            k += find(s) == s;
        return k;
    }

    /// Every class of *this lies inside a class of other.
    bool refines(const Congruence& other) const
    {
        for (int s = 0; s < table_->size(); ++s)
            if (!other.equivalent(s, find(s)))
                return false;
        return true;
    }

    friend bool operator==(const Congruence& a, const Congruence& b)
    {
        return a.table_->size() == b.table_->size() && a.labels() == b.labels();
    }

    /// Intersection of two congruences on the same table.
    friend Congruence meet(const Congruence& a, const Congruence& b)
    {
        if (a.table_ != b.table_ && a.table_->size() != b.table_->size())
            throw std::invalid_argument("meet: congruences live on different tables");
        Congruence out(a.table_);
        std::unordered_map<long long, int> first;
        for (int s = 0; s < a.table_->size(); ++s) {
            const long long key = static_cast<long long>(a.find(s)) * a.table_->size() + b.find(s);
            auto [it, fresh] = first.try_emplace(key, s);
            out.parent_[s] = fresh ? s : it->second;
        }
        return out;
    }

private:
    std::shared_ptr<const SimplexTable> table_;
    std::vector<int> parent_;
    long merges_ = 0;
};

struct QuotientResult {
    SimplicialSet space;
    SimplicialMap projection;
};

/// The quotient of X by a closed congruence. Classes without degenerate
/// members become cells, ordered by degree and then by smallest member.
inline QuotientResult quotient(const Congruence& cong, std::string name = {})
{
    const SimplexTable& tab = cong.table();
    const SimplicialSet& x = tab.space();
    const int n = tab.size();
    const int top = x.empty() ? -1 : tab.max_degree();

    std::vector<int> root(n);
    for (int s = 0; s < n; ++s)
        root[s] = cong.find(s);
    // Per root: a degenerate member if any, else the smallest member.
    std::vector<int> degenerate_member(n, -1);
    std::vector<int> smallest(n, -1);
    for (int s = 0; s < n; ++s) {
        const int r = root[s];
        if (smallest[r] < 0)
            smallest[r] = s;
        if (tab.is_degenerate(s) && degenerate_member[r] < 0)
            degenerate_member[r] = s;
    }

    std::vector<int> new_id(n, -1);
    std::vector<int> rep_cell;
    std::vector<int> new_dim;
    for (int q = 0; q <= top; ++q)
        for (int s = tab.degree_begin(q); s < tab.degree_end(q); ++s)
            if (root[s] == s && degenerate_member[s] < 0) {
                new_id[s] = static_cast<int>(rep_cell.size());
                rep_cell.push_back(tab.cell(smallest[s]));
                new_dim.push_back(q);
            }

    std::vector<std::optional<Simplex>> nf(n);
    auto normal_form = [&](auto&& self, int s) -> Simplex {
        const int r = root[s];
        if (nf[r])
            return *nf[r];
        Simplex out;
        if (new_id[r] >= 0) {
            out = {new_id[r], identity(tab.degree(r))};
        } else {
            const Simplex m = tab.simplex(degenerate_member[r]);
            const Simplex base = self(self, tab.cell_index(m.cell));
            out = {base.cell, compose(m.degen, base.degen)};
        }
        nf[r] = out;
        return out;
    };

    std::vector<CellSpec> specs(rep_cell.size());
    for (std::size_t k = 0; k < rep_cell.size(); ++k) {
        const int q = new_dim[k];
        specs[k].dim = q;
        if (q == 0)
            continue;
        const int s = tab.cell_index(rep_cell[k]);
        for (int i = 0; i <= q; ++i) {
            const Simplex f = normal_form(normal_form, tab.face(s, i));
            specs[k].faces.push_back({f.cell, f.degen});
        }
    }
    SimplicialSet qs = SimplicialSet::build(std::move(specs), std::move(name));
    std::vector<Simplex> proj;
    proj.reserve(x.num_cells());
    for (CellId c = 0; c < x.num_cells(); ++c)
        proj.push_back(normal_form(normal_form, tab.cell_index(c)));
    SimplicialMap p = SimplicialMap::build(x, qs, std::move(proj));
    return {std::move(qs), std::move(p)};
}

/// The congruence identifying simplices with equal image under f.
inline Congruence kernel_congruence(const SimplicialMap& f)
{
    Congruence cong(f.source());
    const SimplexTable& tab = cong.table();
    std::unordered_map<Simplex, int, SimplexHash> first;
    for (int s = 0; s < tab.size(); ++s) {
        auto [it, fresh] = first.try_emplace(f.apply(tab.simplex(s)), s);
        if (!fresh)
            cong.merge(it->second, s);
    }
    return cong;
}

}  // namespace forge
