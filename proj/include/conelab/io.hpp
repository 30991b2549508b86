#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "conelab/market.hpp"

namespace conelab {

class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line) + ": " + msg), line(line) {}
    int line;
};

// Market file format (line-based, rationals as "p/q" in lowest terms):
//
//   conelab-market
//   d 2
//   T 1
//   nodes 3
//   node <id> <time> <parent id or ->       (ascending (time, id))
//   prob <leaf id> <rational>               (ascending leaf id)
//   matrix <node id> [relaxed]              (ascending (time, id))
//   <d rows of d rationals>
//
// "relaxed" marks a matrix exempt from the chain condition (adjusted
// markets). Serialization is canonical: emit(parse(emit(m))) == emit(m).
BidAskProcess parse_market(std::istream& in);
BidAskProcess parse_market_string(const std::string& text);
BidAskProcess load_market(const std::string& path);

std::string emit_market(const BidAskProcess& market);
void save_market(const BidAskProcess& market, const std::string& path);

}  // namespace conelab
