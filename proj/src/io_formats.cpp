#include "skelscore/io_formats.hpp"

#include <algorithm>
#include <cctype>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace skelscore {

namespace {

[[noreturn]] void fail(const std::string& path, std::size_t line, const std::string& message) {
    throw std::runtime_error(path + ":" + std::to_string(line) + ": " + message);
}

[[noreturn]] void fail(const std::string& path, const std::string& message) {
    throw std::runtime_error(path + ": " + message);
}

std::string lower_ext(const std::string& path) {
    const auto dot = path.find_last_of('.');
    if (dot == std::string::npos) return "";
    std::string ext = path.substr(dot + 1);
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return ext;
}

std::ifstream open_input(const std::string& path, bool binary = false) {
    std::ifstream in(path, binary ? std::ios::binary : std::ios::in);
    if (!in) fail(path, "cannot open file");
    return in;
}

std::ofstream open_output(const std::string& path, bool binary = false) {
    std::ofstream out(path, binary ? std::ios::binary : std::ios::out);
    if (!out) fail(path, "cannot open file for writing");
    return out;
}

bool is_comment_or_blank(const std::string& line) {
    for (char c : line) {
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        return c == '#';
    }
    return true;
}

}  // namespace

PointCloud load_point_cloud(const std::string& path) {
    return lower_ext(path) == "ply" ? load_ply(path) : load_xyz(path);
}

PointCloud load_xyz(const std::string& path) {
    auto in = open_input(path);
    PointCloud cloud;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (is_comment_or_blank(line)) continue;
        std::istringstream row(line);
        double x, y, z;
        if (!(row >> x >> y >> z)) fail(path, line_no, "expected three coordinates");
        cloud.points.push_back({x, y, z});
    }
    validate_cloud(cloud, path.c_str());
    return cloud;
}

void save_xyz(const PointCloud& cloud, const std::string& path) {
    auto out = open_output(path);
    out.precision(9);
    for (const Vec3& p : cloud.points) out << p.x() << " " << p.y() << " " << p.z() << "\n";
    if (!out) fail(path, "write failed");
}

namespace {

struct PlyProperty {
    std::string name;
    std::size_t byte_size = 0;
    bool is_list = false;
};

std::size_t ply_type_size(const std::string& type) {
    if (type == "char" || type == "uchar" || type == "int8" || type == "uint8") return 1;
    if (type == "short" || type == "ushort" || type == "int16" || type == "uint16") return 2;
    if (type == "int" || type == "uint" || type == "int32" || type == "uint32" ||
        type == "float" || type == "float32")
        return 4;
    if (type == "double" || type == "float64" || type == "int64" || type == "uint64") return 8;
    return 0;
}

bool ply_type_is_double(const std::string& type) {
    return type == "double" || type == "float64";
}

struct PlyElement {
    std::string name;
    std::size_t count = 0;
    std::vector<PlyProperty> properties;
    std::vector<bool> is_double;
};

}  // namespace

PointCloud load_ply(const std::string& path) {
    auto in = open_input(path, true);
    std::string line;
    std::size_t line_no = 0;

    auto next_line = [&]() {
        if (!std::getline(in, line)) fail(path, line_no, "unexpected end of file");
        if (!line.empty() && line.back() == '\r') line.pop_back();
        ++line_no;
    };

    next_line();
    if (line != "ply") fail(path, line_no, "not a PLY file");

    bool binary = false;
    std::vector<PlyElement> elements;
    while (true) {
        next_line();
        std::istringstream row(line);
        std::string keyword;
        row >> keyword;
        if (keyword == "comment" || keyword == "obj_info" || keyword.empty()) continue;
        if (keyword == "format") {
            std::string format;
            row >> format;
            if (format == "ascii")
                binary = false;
            else if (format == "binary_little_endian")
                binary = true;
            else
                fail(path, line_no, "unsupported PLY format '" + format + "'");
        } else if (keyword == "element") {
            PlyElement element;
            row >> element.name >> element.count;
            elements.push_back(element);
        } else if (keyword == "property") {
            if (elements.empty()) fail(path, line_no, "property before element");
            PlyProperty property;
            std::string type;
            row >> type;
            if (type == "list") {
                property.is_list = true;
                std::string count_type, value_type;
                row >> count_type >> value_type >> property.name;
            } else {
                property.byte_size = ply_type_size(type);
                if (property.byte_size == 0)
                    fail(path, line_no, "unknown property type '" + type + "'");
                row >> property.name;
            }
            elements.back().properties.push_back(property);
            elements.back().is_double.push_back(!property.is_list && ply_type_is_double(type));
        } else if (keyword == "end_header") {
            break;
        } else {
            fail(path, line_no, "unknown header keyword '" + keyword + "'");
        }
    }

    const auto vertex_it = std::find_if(elements.begin(), elements.end(),
                                        [](const PlyElement& e) { return e.name == "vertex"; });
    if (vertex_it == elements.end()) fail(path, "no vertex element");

    PointCloud cloud;
    cloud.points.reserve(vertex_it->count);

    int columns[3] = {-1, -1, -1};
    for (std::size_t c = 0; c < vertex_it->properties.size(); ++c) {
        const auto& property = vertex_it->properties[c];
        if (property.is_list) fail(path, "list property inside the vertex element is unsupported");
        const int axis =
            property.name == "x" ? 0 : property.name == "y" ? 1 : property.name == "z" ? 2 : -1;
        if (axis >= 0) {
            if (property.byte_size != 4 && property.byte_size != 8)
                fail(path, "coordinate property must be float or double");
            columns[axis] = static_cast<int>(c);
        }
    }
    if (columns[0] < 0 || columns[1] < 0 || columns[2] < 0)
        fail(path, "vertex element lacks x/y/z properties");

    if (binary) {
        for (auto it = elements.begin(); it != vertex_it; ++it) {
            std::size_t row_bytes = 0;
            for (const PlyProperty& p : it->properties) {
                if (p.is_list) fail(path, "list property before vertex data is unsupported");
                row_bytes += p.byte_size;
            }
            in.seekg(static_cast<std::streamoff>(row_bytes * it->count), std::ios::cur);
        }
        std::size_t row_bytes = 0;
        std::vector<std::size_t> offsets(vertex_it->properties.size());
        for (std::size_t c = 0; c < vertex_it->properties.size(); ++c) {
            offsets[c] = row_bytes;
            row_bytes += vertex_it->properties[c].byte_size;
        }
        std::vector<char> row(row_bytes);
        for (std::size_t i = 0; i < vertex_it->count; ++i) {
            if (!in.read(row.data(), static_cast<std::streamsize>(row_bytes)))
                fail(path, "truncated vertex data at vertex " + std::to_string(i));
            Vec3 p;
            for (int axis = 0; axis < 3; ++axis) {
                const std::size_t c = static_cast<std::size_t>(columns[axis]);
                if (vertex_it->is_double[c]) {
                    double value;
                    std::memcpy(&value, row.data() + offsets[c], 8);
                    p[axis] = value;
                } else {
                    float value;
                    std::memcpy(&value, row.data() + offsets[c], 4);
                    p[axis] = static_cast<double>(value);
                }
            }
            cloud.points.push_back(p);
        }
    } else {
        for (auto it = elements.begin(); it != vertex_it; ++it)
            for (std::size_t i = 0; i < it->count; ++i) next_line();
        for (std::size_t i = 0; i < vertex_it->count; ++i) {
            next_line();
            std::istringstream row(line);
            std::vector<double> values(vertex_it->properties.size());
            for (double& v : values)
                if (!(row >> v)) fail(path, line_no, "short vertex row");
            cloud.points.push_back({values[columns[0]], values[columns[1]], values[columns[2]]});
        }
    }
    validate_cloud(cloud, path.c_str());
    return cloud;
}

void save_ply(const PointCloud& cloud, const std::string& path, bool binary) {
    auto out = open_output(path, binary);
    out << "ply\n"
        << (binary ? "format binary_little_endian 1.0\n" : "format ascii 1.0\n")
        << "element vertex " << cloud.size() << "\n"
        << "property double x\nproperty double y\nproperty double z\n"
        << "end_header\n";
    if (binary) {
        for (const Vec3& p : cloud.points) {
            const double xyz[3] = {p.x(), p.y(), p.z()};
            out.write(reinterpret_cast<const char*>(xyz), sizeof(xyz));
        }
    } else {
        out.precision(17);
        for (const Vec3& p : cloud.points)
            out << p.x() << " " << p.y() << " " << p.z() << "\n";
    }
    if (!out) fail(path, "write failed");
}

void save_ply_colored(const std::vector<Vec3>& points,
                      const std::vector<std::array<std::uint8_t, 3>>& colors,
                      const std::string& path) {
    if (points.size() != colors.size())
        throw std::invalid_argument("save_ply_colored: points/colors size mismatch");
    auto out = open_output(path);
    out << "ply\nformat ascii 1.0\n"
        << "element vertex " << points.size() << "\n"
        << "property float x\nproperty float y\nproperty float z\n"
        << "property uchar red\nproperty uchar green\nproperty uchar blue\n"
        << "end_header\n";
    out.precision(7);
    for (std::size_t i = 0; i < points.size(); ++i)
        out << points[i].x() << " " << points[i].y() << " " << points[i].z() << " "
            << int(colors[i][0]) << " " << int(colors[i][1]) << " " << int(colors[i][2]) << "\n";
    if (!out) fail(path, "write failed");
}

CurveSkeleton load_curve_skeleton(const std::string& path) {
    return lower_ext(path) == "obj" ? load_obj_lines(path) : load_edge_list(path);
}

CurveSkeleton load_obj_lines(const std::string& path) {
    auto in = open_input(path);
    CurveSkeleton skeleton;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (is_comment_or_blank(line)) continue;
        std::istringstream row(line);
        std::string keyword;
        row >> keyword;
        if (keyword == "v") {
            double x, y, z;
            if (!(row >> x >> y >> z)) fail(path, line_no, "malformed vertex record");
            skeleton.vertices.push_back({x, y, z});
        } else if (keyword == "l") {
            long long previous = -1;
            long long index = 0;
            while (row >> index) {
                if (index < 1 || static_cast<std::size_t>(index) > skeleton.vertices.size())
                    fail(path, line_no, "line index out of range");
                if (previous >= 0) {
                    if (previous == index) fail(path, line_no, "self-loop in line record");
                    skeleton.edges.push_back({static_cast<std::size_t>(previous - 1),
                                              static_cast<std::size_t>(index - 1)});
                }
                previous = index;
            }
            if (previous < 0) fail(path, line_no, "empty line record");
        }
        // other OBJ records (vn, f, ...) are ignored
    }
    try {
        skeleton.validate();
    } catch (const std::invalid_argument& error) {
        fail(path, error.what());
    }
    return skeleton;
}

CurveSkeleton load_edge_list(const std::string& path) {
    auto in = open_input(path);
    std::string line;
    std::size_t line_no = 0;
    auto next_row = [&]() -> std::istringstream {
        while (std::getline(in, line)) {
            ++line_no;
            if (!is_comment_or_blank(line)) return std::istringstream(line);
        }
        fail(path, line_no, "unexpected end of file");
    };

    auto header = next_row();
    std::size_t n = 0, m = 0;
    if (!(header >> n >> m)) fail(path, line_no, "expected 'n m' header");

    CurveSkeleton skeleton;
    skeleton.vertices.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto row = next_row();
        double x, y, z;
        if (!(row >> x >> y >> z)) fail(path, line_no, "expected three coordinates");
        skeleton.vertices.push_back({x, y, z});
    }
    for (std::size_t e = 0; e < m; ++e) {
        auto row = next_row();
        long long a = 0, b = 0;
        if (!(row >> a >> b)) fail(path, line_no, "expected edge 'i j'");
        if (a < 0 || b < 0 || static_cast<std::size_t>(a) >= n || static_cast<std::size_t>(b) >= n)
            fail(path, line_no, "edge index out of range");
        if (a == b) fail(path, line_no, "self-loop edge");
        skeleton.edges.push_back({static_cast<std::size_t>(a), static_cast<std::size_t>(b)});
    }
    try {
        skeleton.validate();
    } catch (const std::invalid_argument& error) {
        fail(path, error.what());
    }
    return skeleton;
}

void save_obj_lines(const CurveSkeleton& skeleton, const std::string& path) {
    auto out = open_output(path);
    out.precision(9);
    for (const Vec3& v : skeleton.vertices)
        out << "v " << v.x() << " " << v.y() << " " << v.z() << "\n";
    for (const auto& [a, b] : skeleton.edges) out << "l " << a + 1 << " " << b + 1 << "\n";
    if (!out) fail(path, "write failed");
}

void save_edge_list(const CurveSkeleton& skeleton, const std::string& path) {
    auto out = open_output(path);
    out.precision(9);
    out << skeleton.vertex_count() << " " << skeleton.edge_count() << "\n";
    for (const Vec3& v : skeleton.vertices)
        out << v.x() << " " << v.y() << " " << v.z() << "\n";
    for (const auto& [a, b] : skeleton.edges) out << a << " " << b << "\n";
    if (!out) fail(path, "write failed");
}

std::vector<std::size_t> load_correspondence(const std::string& path) {
    auto in = open_input(path);
    std::vector<std::size_t> indices;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (is_comment_or_blank(line)) continue;
        std::istringstream row(line);
        long long index = 0;
        if (!(row >> index) || index < 0) fail(path, line_no, "expected a non-negative index");
        indices.push_back(static_cast<std::size_t>(index));
    }
    return indices;
}

}  // namespace skelscore
