#include "nilt/cache.hpp"

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>

namespace nilt {

namespace {

using nlohmann::json;

std::string encode_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

double decode_real(const json& j, const char* field) {
    if (!j.is_string()) throw std::invalid_argument(std::string("cache: field '") + field +
                                                    "' must be a decimal string");
    const std::string s = j.get<std::string>();
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0') {
        throw std::invalid_argument(std::string("cache: cannot parse real in field '") + field + "'");
    }
    return v;
}

void sanity_check(const CmeSpectralForm& form) {
    form.validate();
    const std::vector<double> zeros = cme_zeros(form, 25.0);
    double lo = -1.0, hi = -1.0;
    for (double z : zeros) {
        if (z <= 1.0) lo = z;
        if (z > 1.0) {
            hi = z;
            break;
        }
    }
    if (lo <= 0.0 || hi <= 0.0) {
        throw std::invalid_argument("cache: form has no main-peak interval around t = 1");
    }
    const CoefficientSet cs = expand_spectral_form(form);
    const double f_main = weight_integral(cs, lo, hi);
    if (!(f_main >= 0.99)) {
        throw std::invalid_argument("cache: form fails the f_main >= 0.99 sanity check (f_main = " +
                                    std::to_string(f_main) + ")");
    }
}

}  // namespace

void save_cache(const std::vector<CacheRecord>& records, const std::string& path) {
    json doc;
    doc["format"] = "cme-coefficient-cache";
    doc["version"] = 1;
    json recs = json::array();
    for (const CacheRecord& r : records) {
        json rec;
        rec["n"] = r.form.n;
        rec["c"] = encode_real(r.form.c);
        rec["lambda"] = encode_real(r.form.lambda);
        rec["omega"] = encode_real(r.form.omega);
        json ph = json::array();
        for (double p : r.form.phases) ph.push_back(encode_real(p));
        rec["phases"] = std::move(ph);
        rec["scv"] = encode_real(r.scv_value);
        rec["generator_version"] = r.generator_version;
        rec["seed"] = r.seed;
        recs.push_back(std::move(rec));
    }
    doc["records"] = std::move(recs);

    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) throw std::runtime_error("cache: cannot write " + tmp);
        out << doc.dump(1) << "\n";
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        throw std::runtime_error("cache: atomic rename to " + path + " failed");
    }
}

std::vector<CacheRecord> load_cache(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cache: cannot open " + path);
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw std::invalid_argument("cache: malformed JSON in " + path + ": " + e.what());
    }
    if (doc.value("format", "") != "cme-coefficient-cache") {
        throw std::invalid_argument("cache: unrecognized format field");
    }
    if (doc.value("version", 0) != 1) throw std::invalid_argument("cache: unsupported version");
    std::vector<CacheRecord> out;
    for (const json& rec : doc.at("records")) {
        CacheRecord r;
        r.form.n = rec.at("n").get<int>();
        r.form.c = decode_real(rec.at("c"), "c");
        r.form.lambda = decode_real(rec.at("lambda"), "lambda");
        r.form.omega = decode_real(rec.at("omega"), "omega");
        for (const json& p : rec.at("phases")) r.form.phases.push_back(decode_real(p, "phases"));
        r.scv_value = decode_real(rec.at("scv"), "scv");
        r.generator_version = rec.value("generator_version", "");
        r.seed = rec.value("seed", 0u);
        sanity_check(r.form);
        out.push_back(std::move(r));
    }
    return out;
}

CacheRecord load_cached_order(const std::string& path, int n) {
    for (CacheRecord& r : load_cache(path)) {
        if (r.form.n == n) return std::move(r);
    }
    throw std::invalid_argument("cache: no record for n = " + std::to_string(n) +
                                " in " + path + "; run `nilt gen-cache --orders " +
                                std::to_string(n) + "` to generate it");
}

std::string default_cache_path() {
    if (const char* dir = std::getenv("NILT_CACHE_DIR")) {
        return std::string(dir) + "/cme_cache.json";
    }
    return "data/cme_cache.json";
}

}  // namespace nilt
