#include "eit/cli/output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>

#include <openssl/evp.h>

#include "eit/errors.hpp"

namespace eit::cli {

Column& Table::add(const std::string& n, const std::string& unit)
{
    columns.push_back({n, unit, {}});
    return columns.back();
}

const Column& Table::column(const std::string& n) const
{
    for (const Column& c : columns)
        if (c.name == n)
            return c;
    throw ValidationError("table " + name + ": no column " + n);
}

size_t Table::rows() const
{
    return columns.empty() ? 0 : columns.front().values.size();
}

std::string to_csv(const Table& t)
{
    for (const Column& c : t.columns)
        require(c.values.size() == t.rows(), "table " + t.name + ": column " + c.name + " has a different length");
    std::string out;
    for (size_t j = 0; j < t.columns.size(); ++j) {
        if (j)
            out += ',';
        out += t.columns[j].name + "[" + t.columns[j].unit + "]";
    }
    out += '\n';
    char buf[40];
    for (size_t i = 0; i < t.rows(); ++i) {
        for (size_t j = 0; j < t.columns.size(); ++j) {
            if (j)
                out += ',';
            std::snprintf(buf, sizeof buf, "%.16e", t.columns[j].values[i]);
            out += buf;
        }
        out += '\n';
    }
    return out;
}

namespace {

std::string escape(const std::string& s)
{
    std::string r;
    for (char ch : s) {
        switch (ch) {
        case '<': r += "&lt;"; break;
        case '>': r += "&gt;"; break;
        case '&': r += "&amp;"; break;
        case '"': r += "&quot;"; break;
        default: r += ch;
        }
    }
    return r;
}

std::string fmt(const char* f, double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

// 1-2-5 ticks covering [lo, hi]
std::vector<double> ticks(double lo, double hi)
{
    double span = hi - lo;
    double raw = span / 6;
    double mag = std::pow(10, std::floor(std::log10(raw)));
    double step = mag;
    for (double m : {1.0, 2.0, 5.0, 10.0})
        if (m * mag >= raw) {
            step = m * mag;
            break;
        }
    std::vector<double> t;
    for (double v = std::ceil(lo / step) * step; v <= hi + 1e-9 * span; v += step)
        t.push_back(std::abs(v) < 1e-12 * step ? 0.0 : v);
    return t;
}

const char* palette[] = {"#1f4e9c", "#c0392b", "#2e8b57", "#8e44ad", "#d68910", "#17a2b8", "#555555", "#e84393"};

}  // namespace

std::string to_svg(const Table& t)
{
    require(t.plot.has_value(), "table " + t.name + " has no plot specification");
    const PlotSpec& p = *t.plot;
    const Column& xc = t.columns.front();
    std::vector<const Column*> ys;
    for (const std::string& n : p.y)
        ys.push_back(&t.column(n));

    double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
    for (size_t i = 0; i < xc.values.size(); ++i)
        for (const Column* c : ys) {
            double x = xc.values[i], y = c->values[i];
            if (!std::isfinite(x) || !std::isfinite(y))
                continue;
            x0 = std::min(x0, x);
            x1 = std::max(x1, x);
            y0 = std::min(y0, y);
            y1 = std::max(y1, y);
        }
    if (!std::isfinite(x0)) {
        x0 = 0;
        x1 = 1;
        y0 = 0;
        y1 = 1;
    }
    if (x1 == x0)
        x1 = x0 + 1;
    if (y1 == y0) {
        y0 -= 0.5;
        y1 += 0.5;
    }
    double pad = 0.05 * (y1 - y0);
    y0 -= pad;
    y1 += pad;

    const double W = 760, H = 480, L = 80, R = 200, T = 40, B = 60;
    const double pw = W - L - R, ph = H - T - B;
    auto sx = [&](double x) { return L + (x - x0) / (x1 - x0) * pw; };
    auto sy = [&](double y) { return T + (y1 - y) / (y1 - y0) * ph; };

    std::string s;
    s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"760\" height=\"480\" viewBox=\"0 0 760 480\" "
         "font-family=\"sans-serif\" font-size=\"12\">\n";
    s += "<rect width=\"760\" height=\"480\" fill=\"white\"/>\n";
    s += "<text x=\"" + fmt("%.1f", L + pw / 2) + "\" y=\"24\" text-anchor=\"middle\" font-size=\"14\">"
         + escape(p.title) + "</text>\n";
    s += "<rect x=\"80\" y=\"40\" width=\"" + fmt("%.1f", pw) + "\" height=\"" + fmt("%.1f", ph)
         + "\" fill=\"none\" stroke=\"black\"/>\n";
    for (double v : ticks(x0, x1)) {
        std::string X = fmt("%.2f", sx(v));
        s += "<line x1=\"" + X + "\" x2=\"" + X + "\" y1=\"" + fmt("%.2f", T + ph) + "\" y2=\""
             + fmt("%.2f", T + ph + 5) + "\" stroke=\"black\"/>\n";
        s += "<text x=\"" + X + "\" y=\"" + fmt("%.2f", T + ph + 18) + "\" text-anchor=\"middle\">" + fmt("%g", v)
             + "</text>\n";
    }
    for (double v : ticks(y0, y1)) {
        std::string Y = fmt("%.2f", sy(v));
        s += "<line x1=\"75\" x2=\"80\" y1=\"" + Y + "\" y2=\"" + Y + "\" stroke=\"black\"/>\n";
        s += "<text x=\"72\" y=\"" + Y + "\" text-anchor=\"end\" dominant-baseline=\"middle\">" + fmt("%g", v)
             + "</text>\n";
    }
    s += "<text x=\"" + fmt("%.1f", L + pw / 2) + "\" y=\"" + fmt("%.1f", H - 15) + "\" text-anchor=\"middle\">"
         + escape(p.xlabel) + "</text>\n";
    s += "<text x=\"18\" y=\"" + fmt("%.1f", T + ph / 2) + "\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
         + fmt("%.1f", T + ph / 2) + ")\">" + escape(p.ylabel) + "</text>\n";

    for (size_t k = 0; k < ys.size(); ++k) {
        const char* colour = palette[k % (sizeof palette / sizeof *palette)];
        std::string pts;
        auto flush = [&] {
            if (!pts.empty())
                s += "<polyline fill=\"none\" stroke=\"" + std::string(colour) + "\" stroke-width=\"1.5\" points=\""
                     + pts + "\"/>\n";
            pts.clear();
        };
        for (size_t i = 0; i < xc.values.size(); ++i) {
            double x = xc.values[i], y = ys[k]->values[i];
            if (!std::isfinite(x) || !std::isfinite(y)) {
                flush();
                continue;
            }
            pts += fmt("%.2f", sx(x)) + "," + fmt("%.2f", sy(y)) + " ";
        }
        flush();
        double ly = T + 10 + 18 * k;
        s += "<line x1=\"" + fmt("%.1f", W - R + 12) + "\" x2=\"" + fmt("%.1f", W - R + 36) + "\" y1=\""
             + fmt("%.1f", ly) + "\" y2=\"" + fmt("%.1f", ly) + "\" stroke=\"" + colour
             + "\" stroke-width=\"2\"/>\n";
        s += "<text x=\"" + fmt("%.1f", W - R + 42) + "\" y=\"" + fmt("%.1f", ly)
             + "\" dominant-baseline=\"middle\">" + escape(ys[k]->name) + "</text>\n";
    }
    s += "</svg>\n";
    return s;
}

std::string sha256_hex(const std::string& bytes)
{
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1
        || EVP_DigestUpdate(ctx.get(), bytes.data(), bytes.size()) != 1
        || EVP_DigestFinal_ex(ctx.get(), md, &len) != 1)
        throw std::runtime_error("sha256: OpenSSL digest failed");
    static const char hex[] = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[md[i] >> 4];
        out += hex[md[i] & 15];
    }
    return out;
}

void write_file(const std::filesystem::path& path, const std::string& bytes)
{
    static std::mutex registry_mu;
    static std::map<std::string, std::unique_ptr<std::mutex>> locks;
    std::mutex* m;
    {
        std::lock_guard<std::mutex> g(registry_mu);
        auto& slot = locks[std::filesystem::absolute(path).lexically_normal().string()];
        if (!slot)
            slot = std::make_unique<std::mutex>();
        m = slot.get();
    }
    std::lock_guard<std::mutex> g(*m);
    if (path.has_parent_path())
        std::filesystem::create_directories(path.parent_path());
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f)
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    f.write(bytes.data(), std::streamsize(bytes.size()));
    if (!f)
        throw std::runtime_error("write to " + path.string() + " failed");
}

}  // namespace eit::cli
