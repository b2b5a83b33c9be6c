#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "bicmlab/cli.hpp"

namespace bicm::cli {

namespace {

using nlohmann::json;

bool starts_with(const std::string& s, const std::string& prefix) { return s.rfind(prefix, 0) == 0; }

std::size_t parse_size(const std::string& text, const std::string& what) {
    std::size_t pos = 0;
    unsigned long v = 0;
    try {
        v = std::stoul(text, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("bad " + what + ": '" + text + "'");
    }
    if (pos != text.size()) throw std::invalid_argument("bad " + what + ": '" + text + "'");
    return v;
}

double parse_double(const std::string& text) {
    std::istringstream in(text);
    in.imbue(std::locale::classic());
    double v = 0.0;
    in >> v;
    if (in.fail() || !in.eof()) throw std::invalid_argument("not a number: '" + text + "'");
    return v;
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(text);
    while (std::getline(in, cur, sep)) out.push_back(cur);
    if (!text.empty() && text.back() == sep) out.emplace_back();
    return out;
}

Labeling labeling_from_text(const std::string& text, int m, std::optional<LabelingKind>& kind) {
    if (auto k = parse_labeling_kind(text)) {
        kind = k;
        return generate(*k, m);
    }
    if (text.find_first_of("01") != std::string::npos) {
        Labeling l = Labeling::from_bit_strings(split(text, ','));
        if (l.order() != m) throw std::invalid_argument("labeling order does not match the alphabet");
        return l;
    }
    throw std::invalid_argument("unknown labeling '" + text + "'");
}

BitDistribution bits_from_text(const std::string& text, int m) {
    if (text.empty()) return BitDistribution::uniform(m);
    BitDistribution b{parse_number_list(text)};
    if (b.p0.size() != static_cast<std::size_t>(m))
        throw std::invalid_argument("--bit-p0 needs one probability per bit");
    b.validate();
    return b;
}

struct Base {
    std::string name;
    InputAlphabet alphabet;
    LabelingKind default_labeling;
    CoincidentPoints coincident = CoincidentPoints::reject;
    std::optional<AlphabetKind> kind;
    std::optional<Labeling> file_labeling;
    std::optional<BitDistribution> file_bits;
};

Base make_base(std::string name, InputAlphabet alphabet, LabelingKind default_labeling,
               CoincidentPoints coincident = CoincidentPoints::reject, std::optional<AlphabetKind> kind = {}) {
    return Base{std::move(name), std::move(alphabet), default_labeling, coincident, kind, std::nullopt, std::nullopt};
}

Base from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("unknown constellation preset or unreadable file: '" + path + "'");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::exception& e) {
        throw std::invalid_argument("malformed constellation file '" + path + "': " + e.what());
    }
    try {
        const auto& rows = doc.at("alphabet");
        if (!rows.is_array() || rows.empty()) throw std::invalid_argument("'alphabet' must be a non-empty array");
        const std::size_t n = rows[0].is_array() ? rows[0].size() : 1;
        Matrix x(rows.size(), n);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].is_array()) {
                if (rows[i].size() != n) throw std::invalid_argument("alphabet rows differ in length");
                for (std::size_t d = 0; d < n; ++d) x(i, d) = rows[i][d].get<double>();
            } else {
                if (n != 1) throw std::invalid_argument("alphabet mixes scalars and rows");
                x(i, 0) = rows[i].get<double>();
            }
        }
        Base base = make_base(path, InputAlphabet(std::move(x)), LabelingKind::NBC);
        if (doc.contains("labeling"))
            base.file_labeling = Labeling::from_bit_strings(doc.at("labeling").get<std::vector<std::string>>());
        if (doc.contains("bit_p0")) {
            base.file_bits = BitDistribution{doc.at("bit_p0").get<std::vector<double>>()};
            base.file_bits->validate();
        }
        return base;
    } catch (const json::exception& e) {
        throw std::invalid_argument("malformed constellation file '" + path + "': " + e.what());
    }
}

Base from_preset(const std::string& source) {
    if (source == "otto")
        return make_base(source, project_hypercube(generate(LabelingKind::NBC, 3), otto_projection()), LabelingKind::NBC);
    if (source == "ototo")
        return make_base(source, project_hypercube(generate(LabelingKind::NBC, 3), ototo_projection()), LabelingKind::NBC,
                CoincidentPoints::allow);
    if (starts_with(source, "hier:")) {
        const auto d = parse_number_list(source.substr(5));
        return make_base(source, hierarchical(d), LabelingKind::NBC);
    }
    if (starts_with(source, "pam"))
        return make_base(source, pam(parse_size(source.substr(3), "PAM size")), LabelingKind::BRGC,
                CoincidentPoints::reject, AlphabetKind::PAM);
    if (starts_with(source, "psk"))
        return make_base(source, psk(parse_size(source.substr(3), "PSK size")), LabelingKind::BRGC,
                CoincidentPoints::reject, AlphabetKind::PSK);
    if (starts_with(source, "qam")) {
        const std::string dims = source.substr(3);
        const auto x = dims.find('x');
        std::size_t a = 0;
        std::size_t b = 0;
        if (x == std::string::npos) {
            const std::size_t M = parse_size(dims, "QAM size");
            a = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(M))));
            if (a * a != M) throw std::invalid_argument("qamM needs a square M; use qamAxB");
            b = a;
        } else {
            a = parse_size(dims.substr(0, x), "QAM size");
            b = parse_size(dims.substr(x + 1), "QAM size");
        }
        return make_base(source, qam(a, b), LabelingKind::BRGC);
    }
    return from_file(source);
}

}  // namespace

std::vector<double> parse_number_list(const std::string& text) {
    std::vector<double> out;
    for (const auto& part : split(text, ',')) out.push_back(parse_double(part));
    if (out.empty()) throw std::invalid_argument("empty number list");
    return out;
}

ConstellationSpec resolve_constellation(const std::string& source, const std::string& labeling,
                                        const std::string& bit_p0) {
    if (source.empty()) throw std::invalid_argument("--constellation is required");
    Base base = from_preset(source);
    const int m = base.alphabet.order();

    std::optional<LabelingKind> kind;
    std::optional<Labeling> l;
    if (!labeling.empty()) {
        l = labeling_from_text(labeling, m, kind);
    } else if (base.file_labeling) {
        l = *base.file_labeling;
    } else {
        kind = base.default_labeling;
        l = generate(*kind, m);
    }
    if (l->order() != m) throw std::invalid_argument("labeling order does not match the alphabet");

    BitDistribution bits = base.file_bits && bit_p0.empty() ? *base.file_bits : bits_from_text(bit_p0, m);
    if (bits.p0.size() != static_cast<std::size_t>(m))
        throw std::invalid_argument("bit distribution order does not match the alphabet");
    return {base.name, base.alphabet, *l, bits, base.coincident, base.kind, kind};
}

FadingModel parse_fading(const std::string& text) {
    if (text == "awgn") return FadingModel::awgn();
    if (text == "rayleigh") return FadingModel::rayleigh();
    if (starts_with(text, "nakagami:")) return FadingModel::nakagami(parse_double(text.substr(9)));
    throw std::invalid_argument("unknown fading model '" + text + "'");
}

std::vector<double> parse_range(const std::string& text) {
    const auto parts = split(text, ':');
    if (parts.size() == 1) return {parse_double(parts[0])};
    if (parts.size() != 3) throw std::invalid_argument("range must be start:stop:step, got '" + text + "'");
    const double start = parse_double(parts[0]);
    const double stop = parse_double(parts[1]);
    const double step = parse_double(parts[2]);
    if (!(step > 0.0) || !(stop >= start) || !std::isfinite(start) || !std::isfinite(stop))
        throw std::invalid_argument("range needs step > 0 and stop >= start: '" + text + "'");
    const double span = (stop - start) / step;
    if (span > 1e6) throw std::invalid_argument("range has too many points: '" + text + "'");
    const auto count = static_cast<std::size_t>(std::floor(span + 1e-9)) + 1;
    std::vector<double> out(count);
    for (std::size_t i = 0; i < count; ++i) out[i] = start + step * static_cast<double>(i);
    return out;
}

}  // namespace bicm::cli
