// Copyright 2026 The AWCD Authors
// SPDX-License-Identifier: Apache-2.0
//
// Point cloud files: whitespace-separated .xyz and PLY (ascii 1.0 and
// binary_little_endian 1.0), classified PLY output and label side files.

#ifndef AWCD_CLOUD_IO_HPP_
#define AWCD_CLOUD_IO_HPP_

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "awcd/cloud/point_cloud.hpp"
#include "awcd/text.hpp"

namespace awcd::cloud {

enum class CloudFormat { xyz, ply_ascii, ply_binary_le };

inline const char* to_string(CloudFormat f) {
    switch (f) {
    case CloudFormat::xyz: return "xyz";
    case CloudFormat::ply_ascii: return "ply-ascii";
    case CloudFormat::ply_binary_le: return "ply-binary-le";
    }
    return "?";
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
    std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) throw IoError("read failure on '" + path.string() + "'");
    return data;
}

/// Writes through a sibling temporary file and renames it into place.
inline void write_file_atomic(const std::filesystem::path& path, std::string_view data) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open '" + tmp.string() + "' for writing");
        out.write(data.data(), static_cast<std::streamsize>(data.size()));
        out.flush();
        if (!out) throw IoError("write failure on '" + tmp.string() + "'");
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw IoError("cannot move output into place at '" + path.string() + "'");
    }
}

// ---------------------------------------------------------------- xyz

/// One point per line, first three whitespace-separated numbers are x y z.
/// Blank lines and '#' comments are skipped; extra columns are ignored.
inline PointCloud parse_xyz(std::string_view data) {
    PointCloud cloud(3);
    std::size_t line_no = 0;
    std::size_t pos = 0;
    std::vector<std::string_view> tokens;
    while (pos < data.size()) {
        std::size_t eol = data.find('\n', pos);
        if (eol == std::string_view::npos) eol = data.size();
        const std::string_view line = data.substr(pos, eol - pos);
        pos = eol + 1;
        ++line_no;

        tokens.clear();
        text::split_whitespace(line, tokens);
        if (tokens.empty() || tokens.front().front() == '#') continue;
        if (tokens.size() < 3)
            throw ParseError("xyz line " + std::to_string(line_no) + ": expected 3 coordinates", line_no, 0);
        std::array<double, 3> p{};
        for (std::size_t d = 0; d < 3; ++d) {
            const auto v = text::parse_double(tokens[d]);
            if (!v) throw ParseError("xyz line " + std::to_string(line_no) + ": bad number '" +
                                         std::string(tokens[d]) + "'", line_no, 0);
            p[d] = *v;
        }
        cloud.push_back(p);
    }
    if (cloud.empty()) throw EmptyInputError("xyz input contains no points");
    return cloud;
}

// ---------------------------------------------------------------- ply

namespace detail {

enum class PlyType { i8, u8, i16, u16, i32, u32, f32, f64 };

inline std::optional<PlyType> ply_type(std::string_view name) {
    if (name == "char" || name == "int8") return PlyType::i8;
    if (name == "uchar" || name == "uint8") return PlyType::u8;
    if (name == "short" || name == "int16") return PlyType::i16;
    if (name == "ushort" || name == "uint16") return PlyType::u16;
    if (name == "int" || name == "int32") return PlyType::i32;
    if (name == "uint" || name == "uint32") return PlyType::u32;
    if (name == "float" || name == "float32") return PlyType::f32;
    if (name == "double" || name == "float64") return PlyType::f64;
    return std::nullopt;
}

inline std::size_t ply_size(PlyType t) {
    switch (t) {
    case PlyType::i8:
    case PlyType::u8: return 1;
    case PlyType::i16:
    case PlyType::u16: return 2;
    case PlyType::i32:
    case PlyType::u32:
    case PlyType::f32: return 4;
    case PlyType::f64: return 8;
    }
    return 0;
}

struct PlyProperty {
    std::string name;
    PlyType type = PlyType::f32;
    bool is_list = false;
    PlyType count_type = PlyType::u8;
};

struct PlyElement {
    std::string name;
    std::size_t count = 0;
    std::vector<PlyProperty> properties;
};

struct PlyHeader {
    CloudFormat format = CloudFormat::ply_ascii;
    std::vector<PlyElement> elements;
    std::size_t body_offset = 0;
    std::size_t body_line = 0;  // line number of the first body line
};

inline PlyHeader parse_ply_header(std::string_view data) {
    PlyHeader header;
    std::size_t pos = 0;
    std::size_t line_no = 0;
    bool saw_format = false;
    std::vector<std::string_view> tok;
    for (;;) {
        if (pos >= data.size()) throw ParseError("ply: header not terminated by end_header", line_no, pos);
        std::size_t eol = data.find('\n', pos);
        if (eol == std::string_view::npos) throw ParseError("ply: header not terminated by end_header", line_no, pos);
        std::string_view line = data.substr(pos, eol - pos);
        const std::size_t line_start = pos;
        pos = eol + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

        tok.clear();
        text::split_whitespace(line, tok);
        auto fail = [&](const std::string& why) {
            return ParseError("ply header line " + std::to_string(line_no) + ": " + why, line_no, line_start);
        };
        if (line_no == 1) {
            if (tok.size() != 1 || tok[0] != "ply") throw fail("missing 'ply' magic");
            continue;
        }
        if (tok.empty() || tok[0] == "comment" || tok[0] == "obj_info") continue;
        if (tok[0] == "format") {
            if (tok.size() != 3) throw fail("malformed format line");
            if (tok[1] == "ascii") header.format = CloudFormat::ply_ascii;
            else if (tok[1] == "binary_little_endian") header.format = CloudFormat::ply_binary_le;
            else if (tok[1] == "binary_big_endian") throw fail("binary_big_endian PLY is not supported");
            else throw fail("unknown format '" + std::string(tok[1]) + "'");
            if (tok[2] != "1.0") throw fail("unsupported PLY version '" + std::string(tok[2]) + "'");
            saw_format = true;
        } else if (tok[0] == "element") {
            if (tok.size() != 3) throw fail("malformed element line");
            const auto count = text::parse_double(tok[2]);
            if (!count || *count < 0 || *count != static_cast<double>(static_cast<std::size_t>(*count)))
                throw fail("bad element count");
            header.elements.push_back({std::string(tok[1]), static_cast<std::size_t>(*count), {}});
        } else if (tok[0] == "property") {
            if (header.elements.empty()) throw fail("property before any element");
            PlyProperty prop;
            if (tok.size() == 5 && tok[1] == "list") {
                const auto ct = ply_type(tok[2]);
                const auto it = ply_type(tok[3]);
                if (!ct || !it) throw fail("unknown list property type");
                prop = {std::string(tok[4]), *it, true, *ct};
            } else if (tok.size() == 3) {
                const auto t = ply_type(tok[1]);
                if (!t) throw fail("unknown property type '" + std::string(tok[1]) + "'");
                prop = {std::string(tok[2]), *t, false, PlyType::u8};
            } else {
                throw fail("malformed property line");
            }
            header.elements.back().properties.push_back(prop);
        } else if (tok[0] == "end_header") {
            if (!saw_format) throw fail("end_header before format line");
            header.body_offset = pos;
            header.body_line = line_no + 1;
            return header;
        } else {
            throw fail("unknown header keyword '" + std::string(tok[0]) + "'");
        }
    }
}

/// Binary little-endian reader with byte-offset error reporting.
class LeReader {
public:
    LeReader(std::string_view data, std::size_t offset) : data_(data), pos_(offset) {}

    double read(PlyType t) {
        const std::size_t n = ply_size(t);
        if (pos_ + n > data_.size())
            throw ParseError("ply: truncated binary body at byte offset " + std::to_string(pos_), 0, pos_);
        std::array<unsigned char, 8> raw{};
        std::memcpy(raw.data(), data_.data() + pos_, n);
        if constexpr (std::endian::native == std::endian::big) std::reverse(raw.begin(), raw.begin() + n);
        pos_ += n;
        switch (t) {
        case PlyType::i8: return static_cast<double>(std::bit_cast<std::int8_t>(raw[0]));
        case PlyType::u8: return static_cast<double>(raw[0]);
        case PlyType::i16: return static_cast<double>(load<std::int16_t>(raw));
        case PlyType::u16: return static_cast<double>(load<std::uint16_t>(raw));
        case PlyType::i32: return static_cast<double>(load<std::int32_t>(raw));
        case PlyType::u32: return static_cast<double>(load<std::uint32_t>(raw));
        case PlyType::f32: return static_cast<double>(load<float>(raw));
        case PlyType::f64: return load<double>(raw);
        }
        return 0.0;
    }

    std::size_t offset() const { return pos_; }

private:
    template <class T>
    static T load(const std::array<unsigned char, 8>& raw) {
        T v;
        std::memcpy(&v, raw.data(), sizeof(T));
        return v;
    }

    std::string_view data_;
    std::size_t pos_;
};

inline std::array<std::ptrdiff_t, 3> xyz_slots(const PlyElement& vertex) {
    std::array<std::ptrdiff_t, 3> slot{-1, -1, -1};
    for (std::size_t p = 0; p < vertex.properties.size(); ++p) {
        const auto& prop = vertex.properties[p];
        if (prop.is_list) continue;
        if (prop.name == "x") slot[0] = static_cast<std::ptrdiff_t>(p);
        if (prop.name == "y") slot[1] = static_cast<std::ptrdiff_t>(p);
        if (prop.name == "z") slot[2] = static_cast<std::ptrdiff_t>(p);
    }
    if (slot[0] < 0 || slot[1] < 0 || slot[2] < 0)
        throw ParseError("ply: vertex element lacks x, y and z properties", 0, 0);
    return slot;
}

inline PointCloud parse_ply_ascii_body(std::string_view data, const PlyHeader& h) {
    PointCloud cloud(3);
    std::size_t pos = h.body_offset;
    std::size_t line_no = h.body_line - 1;
    std::vector<std::string_view> tok;
    auto next_line = [&]() -> std::string_view {
        for (;;) {
            if (pos >= data.size())
                throw ParseError("ply: unexpected end of ascii body after line " + std::to_string(line_no), line_no,
                                 pos);
            std::size_t eol = data.find('\n', pos);
            if (eol == std::string_view::npos) eol = data.size();
            std::string_view line = data.substr(pos, eol - pos);
            pos = eol + 1;
            ++line_no;
            tok.clear();
            text::split_whitespace(line, tok);
            if (!tok.empty()) return line;
        }
    };

    for (const PlyElement& el : h.elements) {
        const bool is_vertex = el.name == "vertex";
        std::array<std::ptrdiff_t, 3> slot{};
        if (is_vertex) slot = xyz_slots(el);
        for (std::size_t r = 0; r < el.count; ++r) {
            next_line();
            auto fail = [&](const std::string& why) {
                return ParseError("ply line " + std::to_string(line_no) + ": " + why, line_no, 0);
            };
            std::size_t t = 0;
            std::array<double, 3> p{};
            for (std::size_t pi = 0; pi < el.properties.size(); ++pi) {
                const PlyProperty& prop = el.properties[pi];
                if (t >= tok.size()) throw fail("too few values for element '" + el.name + "'");
                const auto v = text::parse_double(tok[t++]);
                if (!v) throw fail("bad number '" + std::string(tok[t - 1]) + "'");
                if (prop.is_list) {
                    if (*v < 0) throw fail("negative list length");
                    const auto len = static_cast<std::size_t>(*v);
                    if (t + len > tok.size()) throw fail("list shorter than its declared length");
                    t += len;
                    continue;
                }
                if (is_vertex)
                    for (std::size_t d = 0; d < 3; ++d)
                        if (slot[d] == static_cast<std::ptrdiff_t>(pi)) p[d] = *v;
            }
            if (t != tok.size()) throw fail("too many values for element '" + el.name + "'");
            if (is_vertex) cloud.push_back(p);
        }
        if (is_vertex) break;
    }
    return cloud;
}

inline PointCloud parse_ply_binary_body(std::string_view data, const PlyHeader& h) {
    PointCloud cloud(3);
    LeReader reader(data, h.body_offset);
    for (const PlyElement& el : h.elements) {
        const bool is_vertex = el.name == "vertex";
        std::array<std::ptrdiff_t, 3> slot{};
        if (is_vertex) {
            slot = xyz_slots(el);
            cloud.reserve(el.count);
        }
        for (std::size_t r = 0; r < el.count; ++r) {
            std::array<double, 3> p{};
            for (std::size_t pi = 0; pi < el.properties.size(); ++pi) {
                const PlyProperty& prop = el.properties[pi];
                if (prop.is_list) {
                    const std::size_t at = reader.offset();
                    const double len = reader.read(prop.count_type);
                    if (len < 0) throw ParseError("ply: negative list length at byte offset " + std::to_string(at), 0, at);
                    for (std::size_t li = 0; li < static_cast<std::size_t>(len); ++li) reader.read(prop.type);
                    continue;
                }
                const double v = reader.read(prop.type);
                if (is_vertex)
                    for (std::size_t d = 0; d < 3; ++d)
                        if (slot[d] == static_cast<std::ptrdiff_t>(pi)) p[d] = v;
            }
            if (is_vertex) cloud.push_back(p);
        }
        if (is_vertex) break;
    }
    return cloud;
}

} // namespace detail

/// Parses a PLY file image. When `expected` is given the header's format must
/// match it.
inline PointCloud parse_ply(std::string_view data, std::optional<CloudFormat> expected = std::nullopt) {
    const detail::PlyHeader h = detail::parse_ply_header(data);
    if (expected && *expected != h.format)
        throw ParseError(std::string("ply: header declares ") + to_string(h.format) + " but " + to_string(*expected) +
                             " was requested", 0, 0);
    bool has_vertex = false;
    for (const auto& el : h.elements) has_vertex = has_vertex || el.name == "vertex";
    if (!has_vertex) throw ParseError("ply: no vertex element", 0, 0);

    PointCloud cloud = h.format == CloudFormat::ply_ascii ? detail::parse_ply_ascii_body(data, h)
                                                          : detail::parse_ply_binary_body(data, h);
    if (cloud.empty()) throw EmptyInputError("ply input contains no vertices");
    return cloud;
}

/// Format from the extension (.xyz / .ply); for .ply the header decides
/// between ascii and binary.
inline PointCloud load_cloud(const std::filesystem::path& path, std::optional<CloudFormat> format = std::nullopt) {
    const std::string data = read_file(path);
    const std::string ext = path.extension().string();
    const bool as_xyz = format ? *format == CloudFormat::xyz : (ext == ".xyz" || ext == ".txt");
    try {
        if (as_xyz) return parse_xyz(data);
        if (!format && ext != ".ply")
            throw ParseError("cannot infer cloud format from extension '" + ext + "'", 0, 0);
        return parse_ply(data, format);
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what(), e.line(), e.offset());
    } catch (const EmptyInputError& e) {
        throw EmptyInputError(path.string() + ": " + e.what());
    }
}

// ---------------------------------------------------------------- writers

struct Rgb {
    std::uint8_t r, g, b;
    friend bool operator==(const Rgb&, const Rgb&) = default;
};

inline constexpr Rgb kBlue{0, 0, 255};      // kept and real
inline constexpr Rgb kRed{255, 0, 0};       // kept noise
inline constexpr Rgb kYellow{255, 255, 0};  // removed real point
inline constexpr Rgb kWhite{255, 255, 255}; // kept, no ground truth

namespace detail {

inline std::string ply_header(std::size_t count, CloudFormat format, bool color) {
    std::string h = "ply\nformat ";
    h += format == CloudFormat::ply_binary_le ? "binary_little_endian 1.0\n" : "ascii 1.0\n";
    h += "element vertex " + std::to_string(count) + "\n";
    h += "property double x\nproperty double y\nproperty double z\n";
    if (color) h += "property uchar red\nproperty uchar green\nproperty uchar blue\n";
    h += "end_header\n";
    return h;
}

inline void append_le(std::string& out, double v) {
    std::array<char, 8> raw;
    std::memcpy(raw.data(), &v, 8);
    if constexpr (std::endian::native == std::endian::big) std::reverse(raw.begin(), raw.end());
    out.append(raw.data(), 8);
}

inline void require_3d(const PointCloud& cloud, const char* who) {
    if (cloud.dim() != 3) throw DomainError(std::string(who) + ": only 3-D clouds can be written");
}

} // namespace detail

/// Serializes with round-trip-safe decimal (text formats) or raw doubles.
inline std::string serialize_cloud(const PointCloud& cloud, CloudFormat format) {
    detail::require_3d(cloud, "serialize_cloud");
    std::string out;
    if (format != CloudFormat::xyz) out = detail::ply_header(cloud.size(), format, false);
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        const auto p = cloud.point_span(i);
        if (format == CloudFormat::ply_binary_le) {
            for (double v : p) detail::append_le(out, v);
            continue;
        }
        out += text::format_roundtrip(p[0]);
        out += ' ';
        out += text::format_roundtrip(p[1]);
        out += ' ';
        out += text::format_roundtrip(p[2]);
        out += '\n';
    }
    return out;
}

inline CloudFormat format_for_path(const std::filesystem::path& path) {
    return path.extension() == ".ply" ? CloudFormat::ply_binary_le : CloudFormat::xyz;
}

inline void save_cloud(const PointCloud& cloud, const std::filesystem::path& path,
                       std::optional<CloudFormat> format = std::nullopt) {
    write_file_atomic(path, serialize_cloud(cloud, format.value_or(format_for_path(path))));
}

/// Color of point i, or nullopt when it is omitted from the classified file.
inline std::optional<Rgb> classify_color(bool kept, std::optional<Label> truth) {
    if (!truth) return kept ? std::optional<Rgb>(kWhite) : std::nullopt;
    if (kept) return *truth == Label::real ? kBlue : kRed;
    return *truth == Label::real ? std::optional<Rgb>(kYellow) : std::nullopt;
}

/// Ascii PLY with per-vertex RGB: blue kept real, red kept noise, yellow
/// removed real; removed noise omitted. Without truth, kept points are white.
inline std::string serialize_classified(const PointCloud& cloud, std::span<const std::size_t> kept,
                                        const std::optional<std::vector<Label>>& truth) {
    detail::require_3d(cloud, "save_classified");
    if (truth && truth->size() != cloud.size()) throw DomainError("save_classified: label count mismatch");
    std::vector<bool> is_kept(cloud.size(), false);
    for (std::size_t i : kept) {
        if (i >= cloud.size()) throw DomainError("save_classified: kept index out of range");
        is_kept[i] = true;
    }
    std::string body;
    std::size_t rows = 0;
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        const auto color = classify_color(is_kept[i], truth ? std::optional<Label>((*truth)[i]) : std::nullopt);
        if (!color) continue;
        const auto p = cloud.point_span(i);
        body += text::format_roundtrip(p[0]) + ' ' + text::format_roundtrip(p[1]) + ' ' +
                text::format_roundtrip(p[2]) + ' ' + std::to_string(color->r) + ' ' + std::to_string(color->g) + ' ' +
                std::to_string(color->b) + '\n';
        ++rows;
    }
    return detail::ply_header(rows, CloudFormat::ply_ascii, true) + body;
}

inline void save_classified(const PointCloud& cloud, std::span<const std::size_t> kept,
                            const std::optional<std::vector<Label>>& truth, const std::filesystem::path& path) {
    write_file_atomic(path, serialize_classified(cloud, kept, truth));
}

// ---------------------------------------------------------------- labels

/// One label per line: "real"/"noise" or 0 (real) / 1 (noise).
inline std::vector<Label> parse_labels(std::string_view data) {
    std::vector<Label> out;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    std::vector<std::string_view> tok;
    while (pos < data.size()) {
        std::size_t eol = data.find('\n', pos);
        if (eol == std::string_view::npos) eol = data.size();
        const std::string_view line = data.substr(pos, eol - pos);
        pos = eol + 1;
        ++line_no;
        tok.clear();
        text::split_whitespace(line, tok);
        if (tok.empty()) continue;
        if (tok.size() != 1) throw ParseError("labels line " + std::to_string(line_no) + ": expected one label", line_no, 0);
        if (tok[0] == "real" || tok[0] == "0") out.push_back(Label::real);
        else if (tok[0] == "noise" || tok[0] == "1") out.push_back(Label::noise);
        else throw ParseError("labels line " + std::to_string(line_no) + ": unknown label '" + std::string(tok[0]) + "'",
                              line_no, 0);
    }
    return out;
}

inline std::vector<Label> load_labels(const std::filesystem::path& path) {
    try {
        return parse_labels(read_file(path));
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what(), e.line(), e.offset());
    }
}

inline void save_labels(std::span<const Label> labels, const std::filesystem::path& path) {
    std::string out;
    for (Label l : labels) {
        out += to_string(l);
        out += '\n';
    }
    write_file_atomic(path, out);
}

} // namespace awcd::cloud

#endif // AWCD_CLOUD_IO_HPP_
