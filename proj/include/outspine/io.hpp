#pragma once

// JSON and DOT interchange. Vertices are numbered from 0; edges from 1 so
// that a signed id can name a half-edge: +e runs along edge e, -e against.

#include <string>
#include <string_view>

#include "json.hpp"
#include "outspine/filling.hpp"
#include "outspine/spine.hpp"

namespace outspine {

using Json = nlohmann::ordered_json;

/// Parses text; syntax errors become Error with the byte offset.
Json parse_json(std::string_view text);
Json read_json_file(const std::string& path);

int signed_edge(HalfEdge h);
HalfEdge half_edge_from_signed(int id, const Graph& g);

Json to_json(const Graph& g);
/// Accepts arbitrary distinct vertex ids; edge ids must be 1..E in any order.
Graph graph_from_json(const Json& j);

/// Graph JSON plus "mode", "hub" and "marking" (signed edge paths).
Json to_json(const MarkedGraph& m, Mode mode);
/// Mode defaults to L when a basepoint is given and K otherwise; the hub
/// defaults to the basepoint. The result is validated.
SpineVertex marked_graph_from_json(const Json& j);

Json to_json(const SimplicialLoop& loop);
Json to_json(const TwoComplex& x);
TwoComplex complex_from_json(const Json& j);

std::string to_dot(const Graph& g, const std::string& name = "G");
/// The loop as a cycle of labelled nodes.
std::string to_dot(const SimplicialLoop& loop, const std::string& name = "loop");

}  // namespace outspine
