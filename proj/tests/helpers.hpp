#pragma once

#include <string>
#include <vector>

#include "homnet/network.hpp"

namespace homnet::test {

inline NodeInput guest(std::string id, Gender g = Gender::Unknown, Race r = Race::Unknown,
                       double conf = 1.0) {
    NodeInput n;
    n.id = std::move(id);
    n.attrs.gender = g;
    n.attrs.gender_conf = g == Gender::Unknown ? 0.0 : conf;
    n.attrs.race = r;
    n.attrs.race_conf = r == Race::Unknown ? 0.0 : conf;
    return n;
}

inline NodeInput host(std::string id, Gender g = Gender::Unknown, Race r = Race::Unknown,
                      double conf = 1.0, std::optional<HostProfile> profile = {}) {
    NodeInput n = guest(std::move(id), g, r, conf);
    n.is_host = true;
    n.profile = profile;
    return n;
}

inline BipartiteNetwork make_net(std::vector<NodeInput> nodes, std::vector<EdgeInput> edges,
                                 SliceKey slice = {"testville", PropertyType::Full}) {
    return build_network(nodes, edges, slice);
}

}  // namespace homnet::test
