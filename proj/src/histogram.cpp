#include "pairlab/histogram.hpp"

#include "pairlab/errors.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>

namespace pairlab {

std::uint64_t Histogram::total_counts() const {
    return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
}

Histogram build_start_stop_histogram(const TagStream& stream, std::uint8_t start_ch,
                                     std::uint8_t stop_ch, std::int64_t bin_width_ps,
                                     std::int64_t span_ps, std::int64_t hw_resolution_ps) {
    if (bin_width_ps <= 0 || hw_resolution_ps <= 0 || bin_width_ps % hw_resolution_ps != 0) {
        throw AnalysisError("histogram: bin width must be a positive multiple of the "
                            "hardware resolution");
    }
    if (span_ps < bin_width_ps) throw AnalysisError("histogram: span smaller than one bin");
    for (std::size_t i = 1; i < stream.events.size(); ++i) {
        if (stream.events[i].time_ps < stream.events[i - 1].time_ps) {
            throw AnalysisError("histogram: input stream is not sorted");
        }
    }

    const std::int64_t pairing = bin_width_ps / hw_resolution_ps;
    const std::size_t nbins = static_cast<std::size_t>(span_ps / bin_width_ps);

    Histogram h;
    h.bin_width_ps = bin_width_ps;
    h.origin_ps = 0;
    h.counts.assign(nbins, 0);
    h.acquisition_s = static_cast<double>(stream.duration_ps) * 1e-12;

    const std::vector<std::int64_t> stops = stream.times_on_channel(stop_ch);
    std::size_t j = 0;
    for (const auto& tag : stream.events) {
        if (tag.channel != start_ch) continue;
        const std::int64_t t0 = tag.time_ps;
        while (j < stops.size() && stops[j] < t0) ++j;
        for (std::size_t k = j; k < stops.size() && stops[k] - t0 < span_ps; ++k) {
            const std::int64_t hw_bin = (stops[k] - t0) / hw_resolution_ps;
            const std::size_t bin = static_cast<std::size_t>(hw_bin / pairing);
            if (bin < nbins) ++h.counts[bin];
        }
    }
    return h;
}

void write_histogram_csv(const Histogram& h, std::ostream& os) {
    os << "# pairlab histogram\n";
    os << "# bin_width_ps=" << h.bin_width_ps << " origin_ps=" << h.origin_ps
       << " acquisition_s=" << h.acquisition_s << '\n';
    os << "bin_start_ps,count\n";
    for (std::size_t i = 0; i < h.size(); ++i) {
        os << h.bin_start_ps(i) << ',' << h.counts[i] << '\n';
    }
}

Histogram read_histogram_csv(std::istream& is) {
    Histogram h;
    std::string line;
    std::vector<std::pair<std::int64_t, std::uint64_t>> rows;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            // metadata comment: scan key=value tokens
            std::istringstream ls(line.substr(1));
            std::string tok;
            while (ls >> tok) {
                const auto eq = tok.find('=');
                if (eq == std::string::npos) continue;
                const std::string key = tok.substr(0, eq);
                const std::string val = tok.substr(eq + 1);
                try {
                    if (key == "bin_width_ps") h.bin_width_ps = std::stoll(val);
                    else if (key == "origin_ps") h.origin_ps = std::stoll(val);
                    else if (key == "acquisition_s") h.acquisition_s = std::stod(val);
                } catch (const std::exception&) {
                    throw IoError("histogram csv: bad metadata token '" + tok + "'");
                }
            }
            continue;
        }
        if (line.rfind("bin_start_ps", 0) == 0) continue;  // header row
        const auto comma = line.find(',');
        if (comma == std::string::npos) {
            throw IoError("histogram csv: malformed row '" + line + "'");
        }
        try {
            rows.emplace_back(std::stoll(line.substr(0, comma)),
                              std::stoull(line.substr(comma + 1)));
        } catch (const std::exception&) {
            throw IoError("histogram csv: malformed row '" + line + "'");
        }
    }
    if (rows.empty()) throw IoError("histogram csv: no data rows");
    if (h.bin_width_ps == 0 && rows.size() >= 2) {
        h.bin_width_ps = rows[1].first - rows[0].first;
    }
    if (h.bin_width_ps <= 0) throw IoError("histogram csv: cannot determine bin width");
    h.origin_ps = rows.front().first;
    h.counts.reserve(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].first != h.origin_ps + static_cast<std::int64_t>(i) * h.bin_width_ps) {
            throw IoError("histogram csv: non-uniform bin starts");
        }
        h.counts.push_back(rows[i].second);
    }
    return h;
}

}  // namespace pairlab
