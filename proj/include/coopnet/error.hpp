#pragma once

#include <stdexcept>
#include <string>

namespace coopnet {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SelfLoop : Error { using Error::Error; };
struct DuplicateEdge : Error { using Error::Error; };
struct IndexOutOfRange : Error { using Error::Error; };
struct IsolatedNode : Error { using Error::Error; };
struct InvalidParameter : Error { using Error::Error; };
struct TooLarge : Error { using Error::Error; };
struct GenerationTimeout : Error { using Error::Error; };
struct MalformedGraph6 : Error { using Error::Error; };
struct MalformedEdgeList : Error { using Error::Error; };
struct SolverDivergence : Error { using Error::Error; };
struct DomainError : Error { using Error::Error; };
struct MissingAtlas : Error { using Error::Error; };
struct MissingInput : Error { using Error::Error; };

struct Disconnected : Error {
    Disconnected(const std::string& what, int components)
        : Error(what), components(components) {}
    int components;
};

} // namespace coopnet
