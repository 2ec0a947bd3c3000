#pragma once

#include "pairlab/tagstream.hpp"

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace pairlab {

// Binned start-stop delay counts.
struct Histogram {
    std::int64_t bin_width_ps = 0;
    std::int64_t origin_ps = 0;  // start of the first bin
    std::vector<std::uint64_t> counts;
    double acquisition_s = 0.0;

    std::size_t size() const { return counts.size(); }
    std::int64_t bin_start_ps(std::size_t i) const {
        return origin_ps + static_cast<std::int64_t>(i) * bin_width_ps;
    }
    double bin_center_ps(std::size_t i) const {
        return static_cast<double>(bin_start_ps(i)) + 0.5 * static_cast<double>(bin_width_ps);
    }
    std::uint64_t total_counts() const;
};

// For every start event, bins the delays to the stop events in [start,
// start+span). Delays are first quantized to the hardware resolution, then
// grouped into bin_width (summing adjacent hardware bins when bin_width is a
// multiple of the resolution, as the TDC does).
Histogram build_start_stop_histogram(const TagStream& stream, std::uint8_t start_ch,
                                     std::uint8_t stop_ch, std::int64_t bin_width_ps,
                                     std::int64_t span_ps,
                                     std::int64_t hw_resolution_ps = 80);

void write_histogram_csv(const Histogram& h, std::ostream& os);
Histogram read_histogram_csv(std::istream& is);

}  // namespace pairlab
