#pragma once

#include <string>

#include "ioa/channel.hpp"
#include "ioa/nioa.hpp"
#include "ioa/protocol.hpp"

namespace ioa {

// DOT digraph: one node per state (halt-accepting states doublecircled),
// edges labelled "i/o", nodes and edges emitted in sorted order so equal
// inputs yield identical text.
std::string export_dot(const NIOA& a);
std::string export_dot(const CbrAutomaton& c);
std::string export_dot(const Protocol& p);  // the restricted CBR graph

}  // namespace ioa
