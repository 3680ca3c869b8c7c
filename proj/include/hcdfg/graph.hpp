#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "hcdfg/diagnostics.hpp"

namespace hcdfg {

// ---------------------------------------------------------------------------
// Hierarchical control/data flow graph. Three node levels:
//   HCDFG - contains HCDFGs, CDFGs and DFGs (function roots, branch wrappers,
//           embedded calls);
//   CDFG  - one control pattern (if/for/while/do-while/switch) whose children
//           are bound to roles;
//   DFG   - straight-line computation: elementary memory/processing nodes,
//           plus the conditional nodes of the pattern it feeds.
// ---------------------------------------------------------------------------

enum class ElemKind { Processing, Memory, Conditional };
enum class MemMode { Read, Write };

// N1 = function input/output (global accesses feed the metrics),
// N2 = computation temporaries, N3 = re-used inputs cached locally,
// N4 = accumulators. N2-N4 are local at this abstraction level.
enum class MemClass { N1, N2, N3, N4 };

enum class Level { Dfg, Cdfg, Hcdfg };
enum class Pattern { None, If, For, While, DoWhile, Switch };
enum class EdgeKind { Control, Scalar, MultiDim };

enum class RoleKind { None, Cond, Then, Else, Body, Init, Step, Case, Default };

struct Role {
    RoleKind kind = RoleKind::None;
    int index = 0;  // case ordinal for RoleKind::Case
};

inline bool operator==(const Role& a, const Role& b) {
    return a.kind == b.kind && a.index == b.index;
}

inline std::string role_name(const Role& r) {
    switch (r.kind) {
        case RoleKind::None: return "";
        case RoleKind::Cond: return "cond";
        case RoleKind::Then: return "then";
        case RoleKind::Else: return "else";
        case RoleKind::Body: return "body";
        case RoleKind::Init: return "init";
        case RoleKind::Step: return "step";
        case RoleKind::Case: return "case" + std::to_string(r.index);
        case RoleKind::Default: return "default";
    }
    return "";
}

// Linear form of an array subscript over scalar variable names. Non-affine
// subscripts keep affine=false and are treated conservatively by the
// dependence tests.
struct AffineExpr {
    std::map<std::string, long long> terms;
    long long constant = 0;
    bool affine = true;

    bool operator==(const AffineExpr& o) const {
        return terms == o.terms && constant == o.constant && affine == o.affine;
    }
};

struct Edge {
    int from = 0;  // indices into the owning node's children
    int to = 0;
    EdgeKind kind = EdgeKind::Scalar;

    bool operator==(const Edge& o) const {
        return from == o.from && to == o.to && kind == o.kind;
    }
};

struct Node {
    std::string id;    // dotted structural id, e.g. "n0.2.1"
    std::string path;  // readable path, e.g. "dct8_rows/for@6/body"
    SourceSpan span;
    bool elementary = false;

    // elementary payload
    ElemKind ekind = ElemKind::Processing;
    std::string op;            // operator token ("+", "<" ...) for processing/conditional
    MemMode mode = MemMode::Read;
    std::string datum;         // accessed variable for memory nodes
    MemClass mclass = MemClass::N2;
    std::string format;        // element type name of the datum
    bool array_access = false;
    std::vector<AffineExpr> subscripts;
    bool static_test = false;  // conditional that a compiler would eliminate
                               // (counted loop bound test); kept out of n_test

    // composite payload
    Level level = Level::Dfg;
    Pattern pattern = Pattern::None;
    Role role;                    // role this node plays inside its parent pattern
    std::string call_ref;         // callee name for embedded call nodes
    std::vector<std::string> call_args;  // caller datum per argument ("" for literals)
    std::vector<Node> children;
    std::vector<Edge> edges;      // over children indices

    bool is_loop() const {
        return !elementary && level == Level::Cdfg &&
               (pattern == Pattern::For || pattern == Pattern::While ||
                pattern == Pattern::DoWhile);
    }
    bool is_call() const { return !elementary && !call_ref.empty(); }
};

struct LoopInfo {
    bool has_iv = false;
    std::string iv;       // induction variable
    long long init = 0;   // value before the first iteration
    long long step = 0;   // signed increment per iteration
};

inline bool operator==(const LoopInfo& a, const LoopInfo& b) {
    return a.has_iv == b.has_iv && a.iv == b.iv && a.init == b.init && a.step == b.step;
}

struct Hcdfg {
    std::string function;
    Node root;  // level Hcdfg
    // One entry per loop CDFG, keyed by node path; empty optional = trip
    // count not statically known (a profile must supply it).
    std::map<std::string, std::optional<long long>> loop_trips;
    std::map<std::string, LoopInfo> loop_info;
};

// ---------------------------------------------------------------------------
// Traversal helpers
// ---------------------------------------------------------------------------

template <typename F>
void visit_nodes(const Node& n, F&& f) {
    f(n);
    for (const auto& c : n.children) visit_nodes(c, f);
}

inline const Node* find_by_path(const Node& n, const std::string& path) {
    if (n.path == path) return &n;
    for (const auto& c : n.children) {
        if (const Node* hit = find_by_path(c, path)) return hit;
    }
    return nullptr;
}

inline const Node* role_child(const Node& parent, RoleKind kind, int index = 0) {
    for (const auto& c : parent.children) {
        if (c.role.kind == kind && c.role.index == index) return &c;
    }
    return nullptr;
}

// ---------------------------------------------------------------------------
// Structural equality (export/import round trips must preserve it)
// ---------------------------------------------------------------------------

inline bool structural_equal(const Node& a, const Node& b) {
    if (a.id != b.id || a.path != b.path || a.elementary != b.elementary) return false;
    if (!(a.span == b.span)) return false;
    if (a.elementary) {
        if (a.ekind != b.ekind || a.op != b.op) return false;
        if (a.ekind == ElemKind::Memory) {
            if (a.mode != b.mode || a.datum != b.datum || a.mclass != b.mclass ||
                a.format != b.format || a.array_access != b.array_access ||
                !(a.subscripts == b.subscripts))
                return false;
        }
        if (a.ekind == ElemKind::Conditional && a.static_test != b.static_test) return false;
        return true;
    }
    if (a.level != b.level || a.pattern != b.pattern || !(a.role == b.role)) return false;
    if (a.call_ref != b.call_ref || a.call_args != b.call_args) return false;
    if (a.children.size() != b.children.size() || !(a.edges == b.edges)) return false;
    for (size_t i = 0; i < a.children.size(); ++i)
        if (!structural_equal(a.children[i], b.children[i])) return false;
    return true;
}

inline bool structural_equal(const Hcdfg& a, const Hcdfg& b) {
    return a.function == b.function && a.loop_trips == b.loop_trips &&
           a.loop_info == b.loop_info && structural_equal(a.root, b.root);
}

// ---------------------------------------------------------------------------
// Enum <-> string helpers shared by the exporters
// ---------------------------------------------------------------------------

inline const char* mem_class_name(MemClass c) {
    switch (c) {
        case MemClass::N1: return "N1";
        case MemClass::N2: return "N2";
        case MemClass::N3: return "N3";
        case MemClass::N4: return "N4";
    }
    return "?";
}

inline const char* level_name(Level l) {
    switch (l) {
        case Level::Dfg: return "DFG";
        case Level::Cdfg: return "CDFG";
        case Level::Hcdfg: return "HCDFG";
    }
    return "?";
}

inline const char* pattern_name(Pattern p) {
    switch (p) {
        case Pattern::None: return "";
        case Pattern::If: return "if";
        case Pattern::For: return "for";
        case Pattern::While: return "while";
        case Pattern::DoWhile: return "dowhile";
        case Pattern::Switch: return "switch";
    }
    return "";
}

inline const char* edge_kind_name(EdgeKind k) {
    switch (k) {
        case EdgeKind::Control: return "control";
        case EdgeKind::Scalar: return "scalar";
        case EdgeKind::MultiDim: return "multidim";
    }
    return "?";
}

// Datum-level read/write footprint of a subtree; drives the dependence edges
// between sibling graphs.
struct AccessSummary {
    std::set<std::string> scalar_reads, scalar_writes;
    std::set<std::string> array_reads, array_writes;

    bool raw_after(const AccessSummary& earlier) const {
        for (const auto& d : scalar_reads)
            if (earlier.scalar_writes.count(d)) return true;
        return false;
    }
    bool array_raw_after(const AccessSummary& earlier, std::string* which = nullptr) const {
        for (const auto& d : array_reads) {
            if (earlier.array_writes.count(d)) {
                if (which) *which = d;
                return true;
            }
        }
        return false;
    }
    void merge(const AccessSummary& o) {
        scalar_reads.insert(o.scalar_reads.begin(), o.scalar_reads.end());
        scalar_writes.insert(o.scalar_writes.begin(), o.scalar_writes.end());
        array_reads.insert(o.array_reads.begin(), o.array_reads.end());
        array_writes.insert(o.array_writes.begin(), o.array_writes.end());
    }
};

}  // namespace hcdfg
