#pragma once
#include <json.hpp>
#include <string>
#include <vector>

#include "aloenet/diagnostics.hpp"
#include "aloenet/risk.hpp"
#include "aloenet/theory.hpp"

namespace aloenet {

// Insertion-ordered JSON keeps serialize -> parse -> serialize an identity.
using Json = nlohmann::ordered_json;

Json to_json(const GlmFamily& f);
GlmFamily family_from_json(const Json& j);

Json to_json(const SyntheticSpec& s);
SyntheticSpec synthetic_spec_from_json(const Json& j);

Json to_json(const Penalty& p);
Penalty penalty_from_json(const Json& j);

Json to_json(const FitResult& f);
Json to_json(const SmoothedFitResult& f);
Json to_json(const RiskReport& r);
Json to_json(const ScalarSolution& s);
Json to_json(const ActiveSetDiagnostics& d);

// Shortest round-trip decimal form; identical bytes for identical doubles.
std::string format_double(double v);

// CSV cell that keeps integers (notably 64-bit seeds) exact.
struct CsvCell {
    std::string text;
    CsvCell(double v) : text(format_double(v)) {}
    CsvCell(int v) : text(std::to_string(v)) {}
    CsvCell(long v) : text(std::to_string(v)) {}
    CsvCell(std::uint64_t v) : text(std::to_string(v)) {}
};

// Minimal CSV emitter: fixed header, cells formatted as above.
class CsvWriter {
public:
    explicit CsvWriter(std::vector<std::string> columns) : columns_(std::move(columns)) {}
    void add_row(std::vector<CsvCell> row);
    void write(const std::string& path) const;

private:
    std::vector<std::string> columns_;
    std::vector<std::vector<CsvCell>> rows_;
};

void write_text_file(const std::string& path, const std::string& content);

} // namespace aloenet
