#include "wiretap/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "wiretap/errors.hpp"

namespace wiretap {

std::string format_double(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

std::string provenance_line(const std::string& config_hash, std::uint64_t seed) {
    return "# config_hash=" + config_hash + " seed=" + std::to_string(seed) + "\n";
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << content;
    if (!out) throw IoError("write failed: " + path);
}

void write_codebook_csv(const std::string& path, const Codebook& book, const std::string& config_hash,
                        std::uint64_t seed) {
    std::ostringstream s;
    s << provenance_line(config_hash, seed);
    s << "message_index";
    for (std::size_t c = 0; c < book.channel_uses; ++c) s << ",x_" << (c + 1);
    s << "\n";
    for (std::size_t r = 0; r < book.codewords.rows(); ++r) {
        s << r;
        for (std::size_t c = 0; c < book.codewords.cols(); ++c)
            s << "," << format_double(book.codewords(r, c));
        s << "\n";
    }
    write_text_file(path, s.str());
}

void write_cluster_csv(const std::string& path, const ClusterAssignment& assignment,
                       const std::string& config_hash, std::uint64_t seed) {
    std::ostringstream s;
    s << provenance_line(config_hash, seed);
    s << "message_index,cluster_label";
    for (std::size_t c = 0; c < assignment.centers.cols(); ++c) s << ",center_x_" << (c + 1);
    s << "\n";
    for (std::size_t i = 0; i < assignment.labels.size(); ++i) {
        const auto label = static_cast<std::size_t>(assignment.labels[i]);
        s << i << "," << assignment.labels[i];
        for (std::size_t c = 0; c < assignment.centers.cols(); ++c)
            s << "," << format_double(assignment.centers(label, c));
        s << "\n";
    }
    write_text_file(path, s.str());
}

void write_ser_csv(const std::string& path, const SerTable& table, const std::string& config_hash,
                   std::uint64_t seed) {
    std::ostringstream s;
    s << provenance_line(config_hash, seed);
    s << "snr_db,bob_symbol_err,eve_symbol_err,bob_message_err,eve_message_err,samples,"
         "bob_symbol_wilson_halfwidth,eve_symbol_wilson_halfwidth,"
         "bob_message_wilson_halfwidth,eve_message_wilson_halfwidth\n";
    for (const SerRow& row : table.rows) {
        s << format_double(row.snr_db) << "," << format_double(row.bob_symbol_err) << ","
          << format_double(row.eve_symbol_err) << "," << format_double(row.bob_message_err) << ","
          << format_double(row.eve_message_err) << "," << row.samples << ","
          << format_double(row.bob_symbol_halfwidth) << "," << format_double(row.eve_symbol_halfwidth)
          << "," << format_double(row.bob_message_halfwidth) << ","
          << format_double(row.eve_message_halfwidth) << "\n";
    }
    write_text_file(path, s.str());
}

void write_trace_csv(const std::string& path, const std::vector<LossTraceEntry>& trace,
                     const std::string& config_hash, std::uint64_t seed) {
    std::ostringstream s;
    s << provenance_line(config_hash, seed);
    s << "step,phase,loss\n";
    for (const LossTraceEntry& e : trace)
        s << e.step << "," << e.phase << "," << format_double(e.loss) << "\n";
    write_text_file(path, s.str());
}

void write_decision_region_csv(const std::string& path, const DecisionRegionGrid& grid,
                               const std::string& config_hash, std::uint64_t seed) {
    std::ostringstream s;
    s << provenance_line(config_hash, seed);
    s << "x,y,label\n";
    for (std::size_t i = 0; i < grid.labels.size(); ++i)
        s << format_double(grid.xs[i]) << "," << format_double(grid.ys[i]) << "," << grid.labels[i]
          << "\n";
    write_text_file(path, s.str());
}

}  // namespace wiretap
