#include "gpfock/correlation.hpp"

#include <algorithm>

#include "gpfock/budget.hpp"

namespace gpfock {

LinkInvariant link_invariant(const SimpleGraph& g,
                             const std::map<std::string, FactorClassLabel>& labels) {
    const RigidityReport r = is_rigid(g);
    if (!r.rigid)
        throw input_error("link invariant defined only for rigid graphs (witness vertex '" +
                          r.witness + "')");
    for (const auto& name : g.vertices())
        if (!labels.contains(name)) throw input_error("missing label for vertex '" + name + "'");

    LinkInvariant inv;
    for (const auto& name : g.vertices()) {
        TensorSignature sig;
        for (const auto& t : link(g, name)) sig.push_back(labels.at(t));
        std::sort(sig.begin(), sig.end());
        inv.push_back(std::move(sig));
    }
    std::sort(inv.begin(), inv.end());
    return inv;
}

SimpleGraph disjoint_complete_graphs(const std::vector<int>& sizes) {
    std::vector<std::string> vertices;
    std::vector<std::pair<std::string, std::string>> edges;
    for (int n : sizes) {
        std::vector<std::string> component;
        for (int i = 0; i < n; ++i)
            component.push_back(std::to_string(n) + "." + std::to_string(i + 1));
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) edges.emplace_back(component[i], component[j]);
        vertices.insert(vertices.end(), component.begin(), component.end());
    }
    return SimpleGraph(vertices, edges);
}

GfVerdict gf_distinguish(std::vector<int> f, std::vector<int> f_prime) {
    for (auto* set : {&f, &f_prime}) {
        std::sort(set->begin(), set->end());
        set->erase(std::unique(set->begin(), set->end()), set->end());
        for (int n : *set)
            if (n < 2) throw input_error("component sizes must be >= 2");
    }

    auto invariant_of = [](const std::vector<int>& sizes) {
        const SimpleGraph g = disjoint_complete_graphs(sizes);
        std::map<std::string, FactorClassLabel> labels;
        for (const auto& v : g.vertices()) labels[v] = "F2";
        return link_invariant(g, labels);
    };

    GfVerdict out;
    out.invariant_a = invariant_of(f);
    out.invariant_b = invariant_of(f_prime);
    out.distinguished = out.invariant_a != out.invariant_b;
    out.verdict = out.distinguished ? "not W*-correlated" : "indistinguishable by this invariant";
    return out;
}

std::optional<std::vector<std::vector<int>>> tensor_match(
    const std::vector<FactorClassLabel>& labels, const std::vector<TensorSignature>& raw_targets) {
    const int n = static_cast<int>(labels.size());
    const int r = static_cast<int>(raw_targets.size());
    if (r < 1) throw input_error("at least one target signature required");
    if (r > n) throw input_error("more target signatures than labels");
    std::vector<TensorSignature> targets = raw_targets;
    for (auto& sig : targets) {
        if (sig.empty()) throw input_error("empty target signature (blocks must be nonempty)");
        std::sort(sig.begin(), sig.end());
    }

    // Lexicographic sweep over block assignments.
    std::vector<int> assign(n, 0);
    while (true) {
        bool valid = true;
        for (int k = 0; k < r && valid; ++k) {
            TensorSignature block;
            for (int i = 0; i < n; ++i)
                if (assign[i] == k) block.push_back(labels[i]);
            std::sort(block.begin(), block.end());
            if (block != targets[k]) valid = false;
        }
        if (valid) {
            std::vector<std::vector<int>> partition(r);
            for (int i = 0; i < n; ++i) partition[assign[i]].push_back(i);
            return partition;
        }
        int pos = n - 1;
        while (pos >= 0 && assign[pos] == r - 1) assign[pos--] = 0;
        if (pos < 0) return std::nullopt;
        ++assign[pos];
    }
}

}  // namespace gpfock
