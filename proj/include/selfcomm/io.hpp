#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "selfcomm/core.hpp"
#include "selfcomm/enumerate.hpp"
#include "selfcomm/lifting.hpp"
#include "selfcomm/multifacet.hpp"
#include "selfcomm/reduction.hpp"

namespace selfcomm {

// Parse failures carry the 1-based line number of the offending line.
struct ParseError : std::runtime_error {
    int line;
    ParseError(int line_number, const std::string& message)
        : std::runtime_error("line " + std::to_string(line_number) + ": " + message),
          line(line_number) {}
};

// Line-oriented text formats; '#' comment lines are ignored everywhere.
//   ranked:   "ranked <n>"              then "<i>: <j1> <j2> ..."
//   weighted: "weighted <n>"            then "<i> <j> <w>"
//   faceted:  "faceted <n> <f>"         then "<i>/<facet>: <j1> <j2> ..."
//   graph:    "graph <n> directed|undirected [selfloops]" then "<i> <j> [w]"
//   communities: "communities theta=<v> alpha=<v> beta=<v>", one sorted
//                member line per community, lines in lexicographic order.

RankedSystem read_ranked(std::istream& in);
void write_ranked(std::ostream& out, const RankedSystem& system,
                  const std::optional<BlobMap>& blob_map = std::nullopt);

WeightedSystem read_weighted(std::istream& in);
void write_weighted(std::ostream& out, const WeightedSystem& system);

FacetedSystem read_faceted(std::istream& in);
void write_faceted(std::ostream& out, const FacetedSystem& system);

SocialGraph read_graph(std::istream& in);
void write_graph(std::ostream& out, const SocialGraph& graph, bool selfloops_flag);

struct CommunityFile {
    CommunityParams params;
    std::vector<MemberSet> communities;
    bool planted = false;
};

CommunityFile read_communities(std::istream& in);
void write_communities(std::ostream& out, const CommunityParams& params,
                       const CommunitySet& communities, bool planted = false);
void write_community_list(std::ostream& out, const CommunityParams& params,
                          const std::vector<MemberSet>& communities, bool planted = false);

// Reduced ranked instances embed their blob structure in a comment so the
// mapping back to original members survives the round trip.
std::optional<BlobMap> read_blob_map_comment(std::istream& in);

// Convenience file wrappers (throw std::runtime_error when the file is absent).
RankedSystem load_ranked(const std::string& path);
WeightedSystem load_weighted(const std::string& path);
FacetedSystem load_faceted(const std::string& path);
SocialGraph load_graph(const std::string& path);

}  // namespace selfcomm
