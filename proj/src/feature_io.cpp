#include "collarml/feature_io.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>

#include "collarml/csv.hpp"
#include "collarml/errors.hpp"

namespace collarml {

namespace {

constexpr std::uint32_t kFeatureMagic = 0x434D4C46;  // "CMLF"
constexpr std::uint32_t kWindowMagic = 0x434D4C57;   // "CMLW"
constexpr std::uint32_t kFormatVersion = 1;

std::string hash_hex(std::uint64_t h) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

template <typename T>
void put(std::ofstream& f, const T& v) {
    f.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T get(std::ifstream& f) {
    T v{};
    f.read(reinterpret_cast<char*>(&v), sizeof(T));
    if (!f) throw DataError("binary file truncated");
    return v;
}

void put_string(std::ofstream& f, const std::string& s) {
    put<std::uint32_t>(f, static_cast<std::uint32_t>(s.size()));
    f.write(s.data(), static_cast<std::streamsize>(s.size()));
}

std::string get_string(std::ifstream& f) {
    const auto n = get<std::uint32_t>(f);
    std::string s(n, '\0');
    f.read(s.data(), n);
    if (!f) throw DataError("binary file truncated");
    return s;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw DataError("cannot open for writing: " + path);
    return f;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw DataError("cannot open: " + path);
    return f;
}

}  // namespace

void write_feature_csv(const std::string& path, const FeatureMatrix& m) {
    std::ofstream f(path);
    if (!f) throw DataError("cannot open for writing: " + path);
    f << "# schema_hash=" << hash_hex(m.schema_hash()) << "\n";
    f << "animal_id,label";
    for (const auto& name : m.feature_names) f << ',' << name;
    f << '\n';
    for (std::size_t r = 0; r < m.rows(); ++r) {
        f << m.animal_ids[r] << ',' << to_string(m.labels[r]);
        for (std::size_t c = 0; c < m.cols(); ++c) f << ',' << csv::format_double(m.at(r, c));
        f << '\n';
    }
    if (!f) throw DataError("write failed: " + path);
}

FeatureMatrix read_feature_csv(const std::string& path) {
    const auto rows = csv::read_file(path);
    if (rows.empty()) throw DataError("empty feature file: " + path);
    const auto& header = rows[0].fields;
    if (header.size() < 3 || header[0] != "animal_id" || header[1] != "label")
        throw DataError("bad feature csv header: " + path);
    FeatureMatrix m;
    m.feature_names.assign(header.begin() + 2, header.end());
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto& fields = rows[i].fields;
        if (fields.size() != header.size())
            throw DataError(path + ": row width mismatch at line " +
                            std::to_string(rows[i].line_number));
        m.animal_ids.push_back(fields[0]);
        const auto label = behaviour_from_canonical(fields[1]);
        if (!label)
            throw DataError(path + ": unknown behaviour '" + fields[1] + "' at line " +
                            std::to_string(rows[i].line_number));
        m.labels.push_back(*label);
        for (std::size_t c = 2; c < fields.size(); ++c) {
            try {
                m.values.push_back(std::stod(fields[c]));
            } catch (const std::exception&) {
                throw DataError(path + ": bad number at line " +
                                std::to_string(rows[i].line_number));
            }
        }
    }
    return m;
}

void write_feature_bin(const std::string& path, const FeatureMatrix& m) {
    auto f = open_out(path);
    put(f, kFeatureMagic);
    put(f, kFormatVersion);
    put(f, m.schema_hash());
    put<std::uint64_t>(f, m.rows());
    put<std::uint64_t>(f, m.cols());
    for (const auto& name : m.feature_names) put_string(f, name);
    for (const auto& id : m.animal_ids) put_string(f, id);
    for (const auto label : m.labels) put<std::uint8_t>(f, static_cast<std::uint8_t>(label));
    f.write(reinterpret_cast<const char*>(m.values.data()),
            static_cast<std::streamsize>(m.values.size() * sizeof(double)));
    if (!f) throw DataError("write failed: " + path);
}

FeatureMatrix read_feature_bin(const std::string& path) {
    auto f = open_in(path);
    if (get<std::uint32_t>(f) != kFeatureMagic)
        throw DataError("not a feature matrix file: " + path);
    if (get<std::uint32_t>(f) != kFormatVersion)
        throw DataError("unsupported feature file version: " + path);
    const auto stored_hash = get<std::uint64_t>(f);
    const auto rows = get<std::uint64_t>(f);
    const auto cols = get<std::uint64_t>(f);
    FeatureMatrix m;
    m.feature_names.reserve(cols);
    for (std::uint64_t c = 0; c < cols; ++c) m.feature_names.push_back(get_string(f));
    for (std::uint64_t r = 0; r < rows; ++r) m.animal_ids.push_back(get_string(f));
    for (std::uint64_t r = 0; r < rows; ++r)
        m.labels.push_back(static_cast<Behaviour>(get<std::uint8_t>(f)));
    m.values.resize(rows * cols);
    f.read(reinterpret_cast<char*>(m.values.data()),
           static_cast<std::streamsize>(m.values.size() * sizeof(double)));
    if (!f) throw DataError("binary file truncated: " + path);
    if (m.schema_hash() != stored_hash)
        throw DataError("schema hash mismatch in " + path);
    return m;
}

FeatureMatrix read_feature_matrix(const std::string& path) {
    {
        auto f = open_in(path);
        std::uint32_t magic = 0;
        f.read(reinterpret_cast<char*>(&magic), sizeof(magic));
        if (f && magic == kFeatureMagic) return read_feature_bin(path);
    }
    return read_feature_csv(path);
}

void save_windows(const std::string& path, const std::vector<LabeledWindow>& windows) {
    auto f = open_out(path);
    put(f, kWindowMagic);
    put(f, kFormatVersion);
    put<std::uint64_t>(f, windows.size());
    for (const auto& w : windows) {
        put_string(f, w.animal_id);
        put<std::uint64_t>(f, w.window_index);
        put(f, w.start_time_s);
        put(f, w.sample_rate_hz);
        put<std::uint8_t>(f, static_cast<std::uint8_t>(w.label));
        put<std::uint64_t>(f, w.length());
        for (const auto& ch : w.channels)
            f.write(reinterpret_cast<const char*>(ch.data()),
                    static_cast<std::streamsize>(ch.size() * sizeof(double)));
    }
    if (!f) throw DataError("write failed: " + path);
}

std::vector<LabeledWindow> load_windows(const std::string& path) {
    auto f = open_in(path);
    if (get<std::uint32_t>(f) != kWindowMagic) throw DataError("not a window file: " + path);
    if (get<std::uint32_t>(f) != kFormatVersion)
        throw DataError("unsupported window file version: " + path);
    const auto count = get<std::uint64_t>(f);
    std::vector<LabeledWindow> windows;
    windows.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) {
        LabeledWindow w;
        w.animal_id = get_string(f);
        w.window_index = get<std::uint64_t>(f);
        w.start_time_s = get<double>(f);
        w.sample_rate_hz = get<double>(f);
        w.label = static_cast<Behaviour>(get<std::uint8_t>(f));
        const auto length = get<std::uint64_t>(f);
        for (auto& ch : w.channels) {
            ch.resize(length);
            f.read(reinterpret_cast<char*>(ch.data()),
                   static_cast<std::streamsize>(length * sizeof(double)));
        }
        if (!f) throw DataError("binary file truncated: " + path);
        windows.push_back(std::move(w));
    }
    return windows;
}

}  // namespace collarml
