#include "pcot/trim.hpp"

#include <algorithm>
#include <optional>

namespace pcot {

std::string trim_case_name(TrimCase c) {
    switch (c) {
        case TrimCase::Skipped: return "skipped";
        case TrimCase::AlreadyCheap: return "already-cheap";
        case TrimCase::RichCase1: return "rich-case-1";
        case TrimCase::RichCase2: return "rich-case-2";
        case TrimCase::NoRichHeavy: return "norich-heavy";
        case TrimCase::NoRichLight: return "norich-light";
        case TrimCase::AddWindow: return "add-window";
        case TrimCase::AddBundle: return "add-bundle";
        case TrimCase::AddHeavyTop: return "add-heavy-top";
        case TrimCase::AddSideResidual: return "add-side-residual";
        case TrimCase::AddHeavySide: return "add-heavy-side";
    }
    return "unknown";
}

namespace {

// prize/cost >= q, compared without dividing so zero-cost sets behave
bool ratio_at_least(Prize p, Cost c, const Rat& q) { return Rat(p) >= q * c; }

struct SubtreeStats {
    std::map<int, Cost> cost;
    std::map<int, Prize> prize;
};

SubtreeStats subtree_stats(const OutTree& t, const Digraph& g,
                           const PrizeOracle& oracle) {
    SubtreeStats st;
    for (int v : t.nodes()) {
        auto sub = subtree_nodes(t, v);
        Cost c = 0;
        for (int x : sub) c += g.costs[x];
        st.cost[v] = c;
        st.prize[v] = oracle.eval(sub);
    }
    return st;
}

// Covers every item with groups whose cost lands in [floor_s, 2*floor_s).
// Items must each cost below floor_s and total at least floor_s. Greedy
// closes a group as soon as it reaches the floor; a light leftover group
// tops itself up by borrowing items already placed, so groups may overlap
// but every group clears the floor.
std::vector<std::vector<int>> cover_groups(const std::vector<Cost>& items,
                                           const Rat& floor_s) {
    Cost total = 0;
    for (Cost it : items) {
        if (Rat(it) >= floor_s)
            throw invariant_error("grouping expected every item below the floor");
        total += it;
    }
    if (Rat(total) < floor_s)
        throw invariant_error("grouping expected total mass at the floor");
    std::vector<std::vector<int>> groups;
    std::vector<int> cur;
    Cost cur_cost = 0;
    for (size_t i = 0; i < items.size(); ++i) {
        cur.push_back(static_cast<int>(i));
        cur_cost += items[i];
        if (Rat(cur_cost) >= floor_s) {
            groups.push_back(cur);
            cur.clear();
            cur_cost = 0;
        }
    }
    if (!cur.empty()) {
        // leftover: borrow already-grouped items until the floor is met
        std::vector<char> mine(items.size(), 0);
        for (int i : cur) mine[i] = 1;
        for (size_t i = 0; i < items.size() && Rat(cur_cost) < floor_s; ++i) {
            if (mine[i]) continue;
            cur.push_back(static_cast<int>(i));
            cur_cost += items[i];
        }
        if (Rat(cur_cost) < floor_s)
            throw invariant_error("grouping could not lift the leftover group");
        groups.push_back(cur);
    }
    for (const auto& gset : groups) {
        Cost c = 0;
        for (int i : gset) c += items[i];
        if (Rat(c) < floor_s || Rat(c) >= 2 * floor_s)
            throw invariant_error("group cost left its half-open window");
    }
    return groups;
}

// Indices of the shortest prefix whose cost reaches lo (empty if lo <= 0).
std::vector<int> first_crossing(const std::vector<Cost>& items, const Rat& lo) {
    std::vector<int> take;
    if (lo <= 0) return take;
    Cost acc = 0;
    for (size_t i = 0; i < items.size(); ++i) {
        take.push_back(static_cast<int>(i));
        acc += items[i];
        if (Rat(acc) >= lo) return take;
    }
    throw invariant_error("subset selection ran out of mass before the floor");
}

struct EngineParams {
    Rat removal_floor;   // richness floor, removal floor, and group floor
    Rat cheap_bound;     // done once cost is at or below this
    Rat m_bound;         // certified cap on the number of groups
    Rat required_ratio;  // certified output prize density
};

// Builds {w} plus the chosen child subtrees of w, with parents from src.
OutTree assemble_bundle(const OutTree& src, int w, const std::vector<int>& kids,
                        const std::vector<int>& chosen) {
    OutTree base = singleton_tree(w);
    for (int idx : chosen)
        for (int x : subtree_nodes(src, kids[idx]))
            base.parent[x] = (x == kids[idx]) ? w : src.parent.at(x);
    return base;
}

// Shared engine behind the rooted and unrooted low-density trimmers: a
// removal phase, then either a rich subtree (kept whole or grouped) or a
// low-density subtree patched around. Every density comparison is against
// the fixed input ratio gamma.
std::pair<OutTree, TrimCase> submod_engine(const Digraph& g, const OutTree& t,
                                           const PrizeOracle& oracle,
                                           const Rat& gamma,
                                           const EngineParams& pp,
                                           int& group_count,
                                           std::string& note) {
    OutTree cur = t;
    // removal phase: drop strict subtrees (largest first) while the rest
    // keeps ratio gamma and enough cost; restart after every removal
    bool removed = true;
    while (removed) {
        removed = false;
        auto st = subtree_stats(cur, g, oracle);
        std::vector<int> order;
        for (int v : cur.nodes())
            if (v != cur.root) order.push_back(v);
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            if (st.cost[a] != st.cost[b]) return st.cost[a] > st.cost[b];
            return a < b;
        });
        for (int v : order) {
            OutTree rest = remove_subtree(cur, v);
            Cost rc = tree_cost(rest, g);
            if (Rat(rc) < pp.removal_floor) continue;
            Prize rprize = oracle.eval(rest.nodes());
            if (ratio_at_least(rprize, rc, gamma)) {
                cur = rest;
                removed = true;
                break;
            }
        }
    }
    Cost cur_cost = tree_cost(cur, g);
    if (Rat(cur_cost) <= pp.cheap_bound) return {cur, TrimCase::AlreadyCheap};

    auto st = subtree_stats(cur, g, oracle);
    auto ch = cur.children();
    // all_ok[v]: the subtree at v and every subtree inside it hold gamma
    std::map<int, bool> all_ok;
    {
        std::vector<int> order;
        std::vector<int> stack{cur.root};
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            order.push_back(v);
            for (int k : ch[v]) stack.push_back(k);
        }
        std::reverse(order.begin(), order.end());  // children before parents
        for (int v : order) {
            bool ok = ratio_at_least(st.prize[v], st.cost[v], gamma);
            for (int k : ch[v]) ok = ok && all_ok[k];
            all_ok[v] = ok;
        }
    }
    auto rich = [&](int v) {
        return all_ok[v] && Rat(st.cost[v]) >= pp.removal_floor;
    };

    // lowest rich subtree, smallest id first: rich with no rich child
    int w = -1;
    for (int v : cur.nodes()) {
        if (!rich(v)) continue;
        bool minimal = true;
        for (int k : ch[v])
            if (Rat(st.cost[k]) >= pp.removal_floor) minimal = false;
        if (minimal) {
            w = v;
            break;
        }
    }

    if (w >= 0) {
        const std::vector<int>& kids = ch[w];
        Cost kids_cost = st.cost[w] - g.costs[w];
        if (Rat(kids_cost) < pp.removal_floor) {
            // children are light in total: keep the whole rich subtree
            return {full_subtree(cur, w), TrimCase::RichCase1};
        }
        std::vector<Cost> items;
        for (int k : kids) items.push_back(st.cost[k]);
        auto groups = cover_groups(items, pp.removal_floor);
        group_count = static_cast<int>(groups.size());
        if (Rat(group_count) > pp.m_bound)
            throw invariant_error("formed " + std::to_string(group_count) +
                                  " groups, above the certified cap " +
                                  rat_to_string(pp.m_bound));
        int best = -1;
        Prize best_prize = -1;
        for (size_t i = 0; i < groups.size(); ++i) {
            std::vector<int> members{w};
            for (int idx : groups[i])
                for (int x : subtree_nodes(cur, kids[idx])) members.push_back(x);
            Prize p = oracle.eval(members);
            if (p > best_prize) {
                best_prize = p;
                best = static_cast<int>(i);
            }
        }
        // covering certificate: the best group keeps a 1/M prize share
        if (Rat(best_prize) * group_count < Rat(st.prize[w]))
            throw invariant_error("best group prize " + std::to_string(best_prize) +
                                  " times " + std::to_string(group_count) +
                                  " groups falls below the subtree prize " +
                                  std::to_string(st.prize[w]));
        return {assemble_bundle(cur, w, kids, groups[best]), TrimCase::RichCase2};
    }

    // no rich subtree: take the lowest strict subtree that misses gamma
    // while everything inside it holds gamma
    int rp = -1;
    for (int v : cur.nodes()) {
        if (v == cur.root) continue;
        if (ratio_at_least(st.prize[v], st.cost[v], gamma)) continue;
        bool kids_ok = true;
        for (int k : ch[v]) kids_ok = kids_ok && all_ok[k];
        if (kids_ok) {
            rp = v;
            break;
        }
    }
    if (rp < 0)
        throw invariant_error("no rich subtree and no low-density subtree found");
    const std::vector<int>& kids = ch[rp];
    std::vector<Cost> items;
    for (int k : kids) {
        if (Rat(st.cost[k]) >= pp.removal_floor)
            throw invariant_error("low-density subtree has a heavy child; a "
                                  "rich subtree was missed");
        items.push_back(st.cost[k]);
    }
    OutTree rest = remove_subtree(cur, rp);
    Cost rest_cost = tree_cost(rest, g);
    if (Rat(rest_cost) >= pp.removal_floor)
        note += "analysis-discrepancy: remainder cost " +
                std::to_string(rest_cost) + " reaches the removal floor; ";
    if (!(Rat(st.cost[rp]) > pp.cheap_bound - pp.removal_floor))
        note += "analysis-discrepancy: low-density subtree cost " +
                std::to_string(st.cost[rp]) + " under the derived bound; ";

    if (Rat(st.prize[rp]) >= gamma * pp.removal_floor / 2) {
        // enough prize inside: group its children as in the rich case
        auto groups = cover_groups(items, pp.removal_floor);
        group_count = static_cast<int>(groups.size());
        if (Rat(group_count) > pp.m_bound)
            throw invariant_error("formed " + std::to_string(group_count) +
                                  " groups, above the certified cap " +
                                  rat_to_string(pp.m_bound));
        int best = -1;
        Prize best_prize = -1;
        for (size_t i = 0; i < groups.size(); ++i) {
            std::vector<int> members{rp};
            for (int idx : groups[i])
                for (int x : subtree_nodes(cur, kids[idx])) members.push_back(x);
            Prize p = oracle.eval(members);
            if (p > best_prize) {
                best_prize = p;
                best = static_cast<int>(i);
            }
        }
        if (Rat(best_prize) * group_count < Rat(st.prize[rp]))
            throw invariant_error("best group prize falls below its 1/M share "
                                  "of the low-density subtree prize");
        return {assemble_bundle(cur, rp, kids, groups[best]), TrimCase::NoRichHeavy};
    }
    // little prize inside: keep the remainder and pad it to the floor with
    // child subtrees reached through the low-density vertex
    auto take = first_crossing(items, pp.removal_floor - Rat(rest_cost));
    OutTree out = rest;
    out.parent[rp] = cur.parent.at(rp);
    for (int idx : take)
        for (int x : subtree_nodes(cur, kids[idx]))
            out.parent[x] = (x == kids[idx]) ? rp : cur.parent.at(x);
    return {out, TrimCase::NoRichLight};
}

TrimReport finish_report(const Digraph& g, const PrizeOracle& oracle,
                         const OutTree& out, TrimCase taken, const Rat& gamma,
                         const Rat& required, const Rat& lo_cost,
                         const Rat& hi_cost, const Rat& eps, const Rat& h,
                         int group_count, std::string note) {
    validate_tree(out, g);
    TrimReport rep;
    rep.tree = out;
    rep.taken = taken;
    rep.input_ratio = gamma;
    rep.required_ratio = required;
    rep.epsilon = eps;
    rep.h = h;
    rep.group_count = group_count;
    rep.note = std::move(note);
    rep.output_cost = tree_cost(out, g);
    rep.output_prize = oracle.eval(out.nodes());
    if (Rat(rep.output_cost) < lo_cost || Rat(rep.output_cost) > hi_cost)
        throw invariant_error("trim output cost " + std::to_string(rep.output_cost) +
                              " outside [" + rat_to_string(lo_cost) + ", " +
                              rat_to_string(hi_cost) + "] (case " +
                              trim_case_name(taken) + ")");
    if (!ratio_at_least(rep.output_prize, rep.output_cost, required))
        throw invariant_error("trim output density below the certified bound "
                              "(case " + trim_case_name(taken) + ")");
    if (rep.output_cost > 0)
        rep.output_ratio = Rat(rep.output_prize) / Rat(rep.output_cost);
    return rep;
}

void check_eps(const Rat& eps) {
    if (eps <= 0 || eps > 1)
        throw input_error("epsilon must lie in (0, 1], got " + rat_to_string(eps));
}

}  // namespace

TrimReport trim_rooted_submodular(const Digraph& g, const OutTree& t,
                                  const PrizeOracle& oracle, Cost B,
                                  const Rat& eps, const Rat& h) {
    check_eps(eps);
    if (h <= 1) throw input_error("h must exceed 1, got " + rat_to_string(h));
    if (B < 1) throw input_error("budget must be at least 1");
    validate_tree(t, g);
    const int r = t.root;
    if (!is_b_appropriate(g, r, B))
        throw input_error("graph is not budget-appropriate for root " +
                          std::to_string(r));
    Cost c0 = tree_cost(t, g);
    Prize p0 = oracle.eval(t.nodes());
    if (Rat(c0) < eps * Rat(B) / 2)
        throw input_error("tree cost " + std::to_string(c0) +
                          " below the eps*B/2 floor");
    if (Rat(c0) > h * Rat(B))
        throw input_error("tree cost " + std::to_string(c0) + " above h*B");
    Rat gamma = Rat(p0) / Rat(std::max<Cost>(c0, 1));

    EngineParams pp;
    pp.removal_floor = eps * Rat(B) / 2;
    pp.cheap_bound = (1 + eps) * Rat(B);
    pp.m_bound = 4 * h / eps;
    pp.required_ratio = eps * eps * gamma / (32 * h);

    int group_count = 0;
    std::string note;
    auto [core, taken] = submod_engine(g, t, oracle, gamma, pp, group_count, note);
    OutTree out = core;
    if (taken == TrimCase::RichCase1 || taken == TrimCase::RichCase2 ||
        taken == TrimCase::NoRichHeavy) {
        // reconnect the kept piece to the root along a shortest path
        OutTree path = shortest_path(g, r, core.root);
        out = graft_path(path, core, g);
    }
    return finish_report(g, oracle, out, taken, gamma, pp.required_ratio,
                         pp.removal_floor, pp.cheap_bound, eps, h, group_count,
                         std::move(note));
}

TrimReport trim_unrooted_submodular(const Digraph& g, const OutTree& t,
                                    const PrizeOracle& oracle, Cost B,
                                    const Rat& h) {
    if (h <= 1) throw input_error("h must exceed 1, got " + rat_to_string(h));
    if (B < 1) throw input_error("budget must be at least 1");
    validate_tree(t, g);
    for (int v : t.nodes())
        if (2 * g.costs[v] > B)
            throw input_error("vertex " + std::to_string(v) +
                              " costs more than B/2");
    Cost c0 = tree_cost(t, g);
    Prize p0 = oracle.eval(t.nodes());
    if (2 * c0 < B)
        throw input_error("tree cost " + std::to_string(c0) + " below B/2");
    if (Rat(c0) > h * Rat(B))
        throw input_error("tree cost " + std::to_string(c0) + " above h*B");
    Rat gamma = Rat(p0) / Rat(std::max<Cost>(c0, 1));

    EngineParams pp;
    pp.removal_floor = Rat(B) / 4;
    pp.cheap_bound = Rat(B);
    pp.m_bound = 4 * h + 1;
    pp.required_ratio = gamma / (32 * h + 8);

    int group_count = 0;
    std::string note;
    auto [core, taken] = submod_engine(g, t, oracle, gamma, pp, group_count, note);
    return finish_report(g, oracle, core, taken, gamma, pp.required_ratio,
                         pp.removal_floor, pp.cheap_bound, Rat(0), h,
                         group_count, std::move(note));
}

TrimReport trim_rooted_additive(const Digraph& g, const OutTree& t,
                                const PrizeOracle& oracle, Cost B,
                                const Rat& eps) {
    check_eps(eps);
    if (B < 1) throw input_error("budget must be at least 1");
    if (oracle.kind != PrizeOracle::Kind::Additive)
        throw input_error("additive trimming needs an additive prize oracle");
    validate_tree(t, g);
    const int r = t.root;
    if (!is_b_appropriate(g, r, B))
        throw input_error("graph is not budget-appropriate for root " +
                          std::to_string(r));
    Cost c0 = tree_cost(t, g);
    Prize p0 = oracle.eval(t.nodes());
    const Rat floor_c = eps * Rat(B) / 2;  // output cost floor
    const Rat inner_hi = eps * Rat(B);     // kept-part cost that may ride
                                           // above the root path budget
    const Rat cheap = (1 + eps) * Rat(B);
    if (Rat(c0) < floor_c)
        throw input_error("tree cost " + std::to_string(c0) +
                          " below the eps*B/2 floor");
    Rat gamma = Rat(p0) / Rat(std::max<Cost>(c0, 1));
    const Rat required = eps * gamma / 4;

    auto finish = [&](const OutTree& out, TrimCase taken, std::string note) {
        return finish_report(g, oracle, out, taken, gamma, required, floor_c,
                             cheap, eps, Rat(0), 0, std::move(note));
    };
    if (Rat(c0) <= cheap) return finish(t, TrimCase::AlreadyCheap, "");

    auto attach = [&](const OutTree& x) {
        OutTree path = shortest_path(g, r, x.root);
        return graft_path(path, x, g);
    };

    // shrink phase: remove a strict subtree whenever the rest keeps the
    // input density and the cost floor, else descend into the cheapest
    // strict subtree that keeps both on its own; stop when the tree is
    // light enough to hang off a root path, or when neither move applies
    OutTree cur = t;
    while (true) {
        Cost cc = tree_cost(cur, g);
        if (Rat(cc) <= inner_hi)
            return finish(attach(cur), TrimCase::AddWindow, "");
        auto st = subtree_stats(cur, g, oracle);
        std::vector<int> strict;
        for (int v : cur.nodes())
            if (v != cur.root) strict.push_back(v);
        std::sort(strict.begin(), strict.end(), [&](int a, int b) {
            if (st.cost[a] != st.cost[b]) return st.cost[a] > st.cost[b];
            return a < b;
        });
        bool moved = false;
        for (int v : strict) {
            OutTree rest = remove_subtree(cur, v);
            Cost rc = tree_cost(rest, g);
            if (Rat(rc) < floor_c) continue;
            if (ratio_at_least(oracle.eval(rest.nodes()), rc, gamma)) {
                cur = rest;
                moved = true;
                break;
            }
        }
        if (moved) continue;
        int pick = -1;
        for (int v : strict) {
            if (Rat(st.cost[v]) < floor_c) continue;
            if (!ratio_at_least(st.prize[v], st.cost[v], gamma)) continue;
            if (pick < 0 || st.cost[v] < st.cost[pick] ||
                (st.cost[v] == st.cost[pick] && v < pick))
                pick = v;
        }
        if (pick < 0) break;
        cur = full_subtree(cur, pick);
    }

    // endgame: with both moves dead and cost still above eps*B, additivity
    // forces every strict subtree to be light (cost under the floor) or to
    // have a light complement; anything else would have been removable
    Cost cc = tree_cost(cur, g);
    auto st = subtree_stats(cur, g, oracle);
    auto ch = cur.children();
    std::map<int, int> depth;
    {
        depth[cur.root] = 0;
        std::vector<int> stack{cur.root};
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int k : ch[v]) {
                depth[k] = depth[v] + 1;
                stack.push_back(k);
            }
        }
    }
    int w = cur.root;  // deepest vertex whose complement is light
    for (int v : cur.nodes()) {
        if (v == cur.root) continue;
        if (Rat(st.cost[v]) >= floor_c && Rat(cc - st.cost[v]) >= floor_c)
            throw invariant_error("additive endgame reached with a removable "
                                  "strict subtree left");
        if (Rat(cc - st.cost[v]) < floor_c && depth[v] > depth[w]) w = v;
    }
    for (int v : cur.nodes()) {
        if (v == cur.root || v == w || depth[v] <= depth[w]) continue;
        bool below_w = false;
        for (int x = v; x != cur.root; x = cur.parent.at(x))
            if (x == w) below_w = true;
        if (below_w && Rat(st.cost[v]) >= floor_c)
            throw invariant_error("additive endgame pivot is not the deepest "
                                  "heavy vertex");
    }

    const std::vector<int>& kids = ch[w];
    std::vector<Cost> items;
    Cost kids_cost = 0;
    for (int k : kids) {
        items.push_back(st.cost[k]);
        kids_cost += st.cost[k];
    }

    if (Rat(kids_cost) >= floor_c) {
        // the pivot's child subtrees carry enough cost: bundle a prefix of
        // them; each is light, so each holds the input density on its own
        auto take = first_crossing(items, floor_c);
        Prize take_prize = 0;
        Cost take_cost = 0;
        for (int idx : take) {
            take_prize += st.prize[kids[idx]];
            take_cost += st.cost[kids[idx]];
        }
        if (!ratio_at_least(take_prize, take_cost, gamma))
            throw invariant_error("additive bundle of light subtrees lost the "
                                  "input density");
        OutTree bundle = assemble_bundle(cur, w, kids, take);
        return finish(attach(bundle), TrimCase::AddBundle, "");
    }
    if (w == cur.root) {
        // expensive root with light children in total: hang the whole tree
        // off the path; only the children cost rides above the path budget
        return finish(attach(cur), TrimCase::AddHeavyTop, "");
    }
    OutTree rest = remove_subtree(cur, w);
    Prize rest_prize = oracle.eval(rest.nodes());
    if (Rat(rest_prize) >= gamma * floor_c) {
        // the prize sits outside the pivot branch: keep the light remainder,
        // padding it through the pivot only if it lands under the floor
        OutTree path = shortest_path(g, r, cur.root);
        OutTree out = graft_path(path, rest, g);
        Cost out_cost = tree_cost(out, g);
        std::string note;
        if (Rat(out_cost) < floor_c) {
            out.parent[w] = cur.parent.at(w);
            out_cost = tree_cost(out, g);
            for (size_t i = 0; i < items.size() && Rat(out_cost) < floor_c;
                 ++i) {
                for (int x : subtree_nodes(cur, kids[i]))
                    out.parent[x] = (x == kids[i]) ? w : cur.parent.at(x);
                out_cost = tree_cost(out, g);
            }
            note = "padded through the expensive pivot; ";
        }
        return finish(out, TrimCase::AddSideResidual, std::move(note));
    }
    // the prize sits inside the pivot branch: keep that branch whole; its
    // children cost under eps*B/2 rides above the path budget
    return finish(attach(full_subtree(cur, w)), TrimCase::AddHeavySide, "");
}

}  // namespace pcot
