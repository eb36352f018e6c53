#pragma once

#include <cstdint>
#include <functional>

namespace ladderwalk {

// Dead-end subtrees hanging off the ray come in three shapes: an arm
// pointing right of the turning point (a), an arm pointing left of it (b),
// and a rung with arms on both sides (c).
enum class TrapKind { a, b, c };

inline char trap_kind_char(TrapKind k) {
    switch (k) {
        case TrapKind::a: return 'a';
        case TrapKind::b: return 'b';
        default: return 'c';
    }
}

// A ladder vertex: row 0 or 1, column in Z.
struct Vertex {
    int row = 0;
    std::int64_t col = 0;
    bool operator==(const Vertex&) const = default;
};

inline std::uint64_t pack_vertex(const Vertex& v) {
    return (static_cast<std::uint64_t>(v.col) << 1) | static_cast<std::uint64_t>(v.row);
}

struct VertexHash {
    std::size_t operator()(const Vertex& v) const {
        return std::hash<std::uint64_t>{}(pack_vertex(v));
    }
};

}  // namespace ladderwalk
