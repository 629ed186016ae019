#include "output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <stdexcept>

namespace onebit::cli {

namespace {

std::ofstream open_or_throw(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    return out;
}

}  // namespace

std::string format_double(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9g", value);
    return buf;
}

void write_ber_csv(const std::string& path, const std::vector<BerRecord>& records) {
    std::ofstream out = open_or_throw(path);
    out << "precoder,snr_db,bits_sent,bit_errors,ber,mean_solve_seconds\n";
    for (const BerRecord& r : records)
        out << r.precoder << ',' << format_double(r.snr_db) << ',' << r.bits_sent << ','
            << r.bit_errors << ',' << format_double(r.ber) << ','
            << format_double(r.mean_solve_seconds) << '\n';
}

void write_user_csv(const std::string& path,
                    const std::vector<std::pair<std::size_t, BerRecord>>& rows) {
    std::ofstream out = open_or_throw(path);
    out << "precoder,k,bits_sent,bit_errors,ber,mean_solve_seconds\n";
    for (const auto& [users, r] : rows)
        out << r.precoder << ',' << users << ',' << r.bits_sent << ',' << r.bit_errors << ','
            << format_double(r.ber) << ',' << format_double(r.mean_solve_seconds) << '\n';
}

void write_time_csv(const std::string& path, const std::vector<BenchRecord>& records) {
    std::ofstream out = open_or_throw(path);
    out << "precoder,k,nt,mean_solve_seconds,iters_mean\n";
    for (const BenchRecord& r : records)
        out << r.precoder << ',' << r.users << ',' << r.antennas << ','
            << format_double(r.mean_solve_seconds) << ',' << format_double(r.iters_mean) << '\n';
}

void write_manifest(const std::string& path,
                    const std::vector<std::pair<std::string, std::string>>& entries) {
    std::ofstream out = open_or_throw(path);
    for (const auto& [key, value] : entries) out << key << '=' << value << '\n';
}

void write_ber_svg(const std::string& path, const std::vector<BerRecord>& records) {
    std::map<std::string, std::vector<const BerRecord*>> by_precoder;
    double snr_min = 1e300, snr_max = -1e300;
    double ber_min = 1.0;
    for (const BerRecord& r : records) {
        by_precoder[r.precoder].push_back(&r);
        snr_min = std::min(snr_min, r.snr_db);
        snr_max = std::max(snr_max, r.snr_db);
        if (r.ber > 0.0) ber_min = std::min(ber_min, r.ber);
    }
    if (by_precoder.empty()) throw std::invalid_argument("write_ber_svg: no records");
    if (snr_max == snr_min) snr_max = snr_min + 1.0;

    const double floor_exp = std::floor(std::log10(std::max(ber_min, 1e-12))) - 1.0;
    const double top_exp = 0.0;
    const double width = 640.0, height = 480.0;
    const double ml = 70.0, mr = 140.0, mt = 30.0, mb = 50.0;
    const double pw = width - ml - mr, ph = height - mt - mb;

    auto sx = [&](double snr) { return ml + (snr - snr_min) / (snr_max - snr_min) * pw; };
    auto sy = [&](double ber) {
        const double e = ber > 0.0 ? std::max(std::log10(ber), floor_exp) : floor_exp;
        return mt + (top_exp - e) / (top_exp - floor_exp) * ph;
    };

    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                                   "#8c564b"};

    std::ofstream out = open_or_throw(path);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    // gridlines per decade + axis labels
    for (double e = top_exp; e >= floor_exp - 0.5; e -= 1.0) {
        const double y = mt + (top_exp - e) / (top_exp - floor_exp) * ph;
        out << "<line x1=\"" << ml << "\" y1=\"" << y << "\" x2=\"" << ml + pw << "\" y2=\"" << y
            << "\" stroke=\"#dddddd\"/>\n";
        out << "<text x=\"" << ml - 8 << "\" y=\"" << y + 4
            << "\" text-anchor=\"end\">1e" << static_cast<int>(e) << "</text>\n";
    }
    for (const BerRecord& r : records) {
        const double x = sx(r.snr_db);
        out << "<line x1=\"" << x << "\" y1=\"" << mt << "\" x2=\"" << x << "\" y2=\"" << mt + ph
            << "\" stroke=\"#eeeeee\"/>\n";
    }
    out << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << pw << "\" height=\"" << ph
        << "\" fill=\"none\" stroke=\"black\"/>\n";
    out << "<text x=\"" << ml + pw / 2 << "\" y=\"" << height - 12
        << "\" text-anchor=\"middle\">SNR (dB)</text>\n";
    out << "<text x=\"18\" y=\"" << mt + ph / 2
        << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 " << mt + ph / 2
        << ")\">BER</text>\n";

    std::size_t idx = 0;
    for (const auto& [name, rows] : by_precoder) {
        const char* color = colors[idx % 6];
        std::vector<const BerRecord*> sorted = rows;
        std::sort(sorted.begin(), sorted.end(),
                  [](const BerRecord* a, const BerRecord* b) { return a->snr_db < b->snr_db; });
        out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.8\" points=\"";
        for (const BerRecord* r : sorted) out << sx(r->snr_db) << ',' << sy(r->ber) << ' ';
        out << "\"/>\n";
        for (const BerRecord* r : sorted)
            out << "<circle cx=\"" << sx(r->snr_db) << "\" cy=\"" << sy(r->ber)
                << "\" r=\"3\" fill=\"" << color << "\"/>\n";
        const double ly = mt + 16.0 + 18.0 * static_cast<double>(idx);
        out << "<line x1=\"" << ml + pw + 10 << "\" y1=\"" << ly << "\" x2=\"" << ml + pw + 34
            << "\" y2=\"" << ly << "\" stroke=\"" << color << "\" stroke-width=\"1.8\"/>\n";
        out << "<text x=\"" << ml + pw + 40 << "\" y=\"" << ly + 4 << "\">" << name
            << "</text>\n";
        ++idx;
    }
    out << "</svg>\n";
}

}  // namespace onebit::cli
