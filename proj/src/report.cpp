#include "tcprof/report.hpp"

#include <algorithm>
#include <cstdio>

#include "tcprof/io.hpp"

namespace tcprof {

namespace {

std::string range_label(const Bucket& b) {
    return "[" + format_fixed(b.r_min) + ", " + format_fixed(b.r_max) + "]";
}

std::string xml_escape(std::string_view text) {
    std::string out;
    for (const char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string measure_axis_label(MeasureTag tag) {
    switch (tag) {
        case MeasureTag::PenDiff: return "PEN-diff range";
        case MeasureTag::PprDiff: return "PPR-diff range";
        case MeasureTag::DistanceDiff: return "Distance-diff range";
    }
    return "range";
}

constexpr const char* kPalette[] = {"#4c72b0", "#dd8452", "#55a868", "#c44e52", "#8172b3", "#937860", "#da8bc3"};

}  // namespace

std::string m_level_label(double m) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", m);
    return buf;
}

nlohmann::json histogram_json(const DeltaHistogram& h) {
    using nlohmann::json;
    json levels = json::array();
    for (const auto m : h.m_levels) levels.push_back(m);
    json buckets = json::array();
    for (std::size_t i = 0; i < h.buckets.size(); ++i) {
        const auto& b = h.buckets[i];
        json top = json::object(), pct = json::object();
        for (std::size_t j = 0; j < h.m_levels.size(); ++j) {
            top[m_level_label(h.m_levels[j])] = b.known_in_top[j];
            pct[m_level_label(h.m_levels[j])] = b.percent[j];
        }
        buckets.push_back(json{{"index", i},
                               {"r_min", b.r_min},
                               {"r_max", b.r_max},
                               {"combo_count", b.combo_count},
                               {"known_in_bucket", b.known_in_bucket},
                               {"known_in_top", std::move(top)},
                               {"percent", std::move(pct)},
                               {"coverage", b.coverage}});
    }
    return json{{"measure", std::string(measure_name(h.measure))},
                {"k", h.k},
                {"n_bucket", h.n_bucket},
                {"m_levels", std::move(levels)},
                {"total_combos", h.total_combos},
                {"total_known", h.total_known},
                {"global_min", h.global_min},
                {"global_max", h.global_max},
                {"degenerate", h.degenerate},
                {"buckets", std::move(buckets)},
                {"thresholds",
                 {{"bucket", h.max_coverage_bucket},
                  {"delta_min", h.delta_min},
                  {"delta_max", h.delta_max},
                  {"coverage", h.buckets.at(h.max_coverage_bucket).coverage}}}};
}

std::string known_membership_csv(const DeltaHistogram& h, const SignalingNetwork& network) {
    std::string out = "bucket,r_min,r_max,bucket_size,combination,value,rank\n";
    for (const auto& p : h.known) {
        const auto& b = h.buckets.at(p.bucket);
        std::string members;
        for (const auto m : p.members) {
            if (!members.empty()) members += ';';
            members += network.symbol(m);
        }
        out += std::to_string(p.bucket) + ',' + format_fixed(b.r_min) + ',' + format_fixed(b.r_max) + ',' +
               std::to_string(b.combo_count) + ',' + members + ',' + format_fixed(p.value) + ',' +
               std::to_string(p.rank) + '\n';
    }
    return out;
}

std::string histogram_svg(const DeltaHistogram& h, const std::string& title) {
    const std::size_t groups = h.buckets.size();
    const std::size_t bars = h.m_levels.size();
    const double left = 70, right = 160, top = 50, bottom = 80;
    const double plot_w = std::max<double>(120.0 * groups, 360.0);
    const double plot_h = 300;
    const double width = left + plot_w + right, height = top + plot_h + bottom;
    const double group_w = plot_w / groups;
    const double bar_w = group_w * 0.8 / bars;

    auto num = [](double x) { return format_fixed(x, 2); };
    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(width) + "\" height=\"" + num(height) +
           "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    const std::string heading = title.empty() ? "Delta histogram (k=" + std::to_string(h.k) + ")" : title;
    svg += "<text x=\"" + num(left + plot_w / 2) + "\" y=\"28\" text-anchor=\"middle\" font-size=\"16\">" +
           xml_escape(heading) + "</text>\n";

    // Axes and gridlines (0..100 %).
    for (int tick = 0; tick <= 100; tick += 20) {
        const double y = top + plot_h - plot_h * tick / 100.0;
        svg += "<line x1=\"" + num(left) + "\" y1=\"" + num(y) + "\" x2=\"" + num(left + plot_w) + "\" y2=\"" +
               num(y) + "\" stroke=\"#dddddd\"/>\n";
        svg += "<text x=\"" + num(left - 8) + "\" y=\"" + num(y + 4) + "\" text-anchor=\"end\">" +
               std::to_string(tick) + "</text>\n";
    }
    svg += "<line x1=\"" + num(left) + "\" y1=\"" + num(top) + "\" x2=\"" + num(left) + "\" y2=\"" +
           num(top + plot_h) + "\" stroke=\"black\"/>\n";
    svg += "<line x1=\"" + num(left) + "\" y1=\"" + num(top + plot_h) + "\" x2=\"" + num(left + plot_w) +
           "\" y2=\"" + num(top + plot_h) + "\" stroke=\"black\"/>\n";

    for (std::size_t g = 0; g < groups; ++g) {
        const auto& b = h.buckets[g];
        const double gx = left + g * group_w + group_w * 0.1;
        svg += "<g class=\"bucket\" data-index=\"" + std::to_string(g) + "\">\n";
        for (std::size_t j = 0; j < bars; ++j) {
            const double pct = std::clamp(b.percent[j], 0.0, 100.0);
            const double bh = plot_h * pct / 100.0;
            svg += "<rect class=\"bar\" x=\"" + num(gx + j * bar_w) + "\" y=\"" + num(top + plot_h - bh) +
                   "\" width=\"" + num(bar_w) + "\" height=\"" + num(bh) + "\" fill=\"" +
                   kPalette[j % std::size(kPalette)] + "\"><title>top " + m_level_label(h.m_levels[j]) + "%: " +
                   format_fixed(b.percent[j]) + "%</title></rect>\n";
        }
        svg += "<text x=\"" + num(left + (g + 0.5) * group_w) + "\" y=\"" + num(top + plot_h + 18) +
               "\" text-anchor=\"middle\">" + range_label(b) + "</text>\n";
        svg += "</g>\n";
    }

    svg += "<text x=\"" + num(left + plot_w / 2) + "\" y=\"" + num(height - 20) + "\" text-anchor=\"middle\">" +
           measure_axis_label(h.measure) + "</text>\n";
    svg += "<text transform=\"translate(20," + num(top + plot_h / 2) +
           ") rotate(-90)\" text-anchor=\"middle\">% of known combinations</text>\n";

    const double lx = left + plot_w + 20;
    for (std::size_t j = 0; j < bars; ++j) {
        const double ly = top + 10 + j * 20;
        svg += "<rect x=\"" + num(lx) + "\" y=\"" + num(ly) + "\" width=\"12\" height=\"12\" fill=\"" +
               kPalette[j % std::size(kPalette)] + "\"/>\n";
        svg += "<text x=\"" + num(lx + 18) + "\" y=\"" + num(ly + 10) + "\">top " + m_level_label(h.m_levels[j]) +
               "%</text>\n";
    }
    svg += "</svg>\n";
    return svg;
}

void emit_plot(const DeltaHistogram& histogram, const std::filesystem::path& path, const std::string& title) {
    write_text_file(path, histogram_svg(histogram, title));
}

nlohmann::json noise_run_json(const NoiseRun& run) {
    return nlohmann::json{{"mode", std::string(perturb_mode_name(run.mode))},
                          {"fraction", run.fraction},
                          {"seed", run.seed},
                          {"network_digest", hex_digest(run.network_digest)},
                          {"edge_count", run.edge_count},
                          {"histogram", histogram_json(run.histogram)}};
}

}  // namespace tcprof
