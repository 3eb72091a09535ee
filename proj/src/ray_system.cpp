#include "ks33/ray_system.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace ks33 {

using nlohmann::json;

int RaySystem::find(const Vec3Q& canonical) const {
    for (const Ray& r : rays)
        if (r.direction == canonical) return r.id;
    return 0;
}

const Ray& RaySystem::ray(int id) const {
    if (id < 1 || id > static_cast<int>(rays.size()))
        throw std::out_of_range("ray id out of range");
    return rays[static_cast<std::size_t>(id) - 1];
}

RaySystem build_ray_system() {
    RaySystem rs;
    const auto& axes = cube_axes();
    const auto& labels = cube_axis_labels();
    for (Axis cube : {Axis::x, Axis::y, Axis::z}) {
        for (int i = 0; i < cube_axis_count; ++i) {
            Vec3Q dir = canonical_direction(rotate45(cube, axes[i]));
            if (int dup = rs.find(dir); dup != 0) {
                rs.eliminated.push_back({cube, labels[i], dup});
            } else {
                rs.rays.push_back({static_cast<int>(rs.rays.size()) + 1, dir});
                rs.origins.push_back({cube, labels[i]});
            }
        }
    }
    int per_cube[3] = {0, 0, 0};
    for (const RayOrigin& o : rs.origins) per_cube[static_cast<int>(o.cube)]++;
    if (rs.rays.size() != 33 || rs.eliminated.size() != 6 ||
        per_cube[0] != 13 || per_cube[1] != 10 || per_cube[2] != 10)
        throw std::logic_error("ray system construction produced wrong counts");
    return rs;
}

std::vector<Basis> enumerate_bases(const RaySystem& rs) {
    const int n = static_cast<int>(rs.rays.size());
    std::vector<Basis> out;
    std::set<std::pair<int, int>> in_triad;
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) {
            if (!orthogonal(rs.ray(i).direction, rs.ray(j).direction)) continue;
            for (int k = j + 1; k <= n; ++k) {
                if (orthogonal(rs.ray(i).direction, rs.ray(k).direction) &&
                    orthogonal(rs.ray(j).direction, rs.ray(k).direction)) {
                    out.push_back({0, {i, j, k}, Vec3Q{}});
                    in_triad.insert({i, j});
                    in_triad.insert({i, k});
                    in_triad.insert({j, k});
                }
            }
        }
    for (const auto& [i, j] : orthogonal_pairs(rs)) {
        if (in_triad.count({i, j})) continue;
        Vec3Q third = canonical_direction(
            cross(rs.ray(i).direction, rs.ray(j).direction));
        if (rs.find(third) != 0)
            throw std::logic_error("pair completion unexpectedly inside the ray system");
        out.push_back({0, {i, j}, third});
    }
    std::sort(out.begin(), out.end(),
              [](const Basis& a, const Basis& b) { return a.ids < b.ids; });
    int triads = 0;
    for (std::size_t r = 0; r < out.size(); ++r) {
        out[r].rank = static_cast<int>(r) + 1;
        triads += out[r].is_triad();
    }
    if (out.size() != 40 || triads != 16)
        throw std::logic_error("basis enumeration produced wrong counts");
    return out;
}

std::array<Vec3Q, 3> basis_directions(const RaySystem& rs, const Basis& b) {
    std::array<Vec3Q, 3> dirs;
    for (int s = 0; s < b.size(); ++s) dirs[s] = rs.ray(b.ids[s]).direction;
    if (!b.is_triad()) dirs[2] = b.completion;
    return dirs;
}

std::vector<std::array<int, 2>> orthogonal_pairs(const RaySystem& rs) {
    const int n = static_cast<int>(rs.rays.size());
    std::vector<std::array<int, 2>> out;
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            if (orthogonal(rs.ray(i).direction, rs.ray(j).direction))
                out.push_back({i, j});
    return out;
}

std::vector<std::array<int, 2>> uncovered_orthogonal_pairs(
    const RaySystem& rs, std::span<const Basis> bases) {
    std::set<std::array<int, 2>> covered;
    for (const Basis& b : bases)
        for (int s = 0; s < b.size(); ++s)
            for (int t = s + 1; t < b.size(); ++t)
                covered.insert({b.ids[s], b.ids[t]});
    std::vector<std::array<int, 2>> out;
    for (const auto& p : orthogonal_pairs(rs))
        if (!covered.count(p)) out.push_back(p);
    return out;
}

namespace {

// Column width of a string as displayed; the only multi-byte character these
// tables emit is the 3-byte radical sign, shown in one column.
std::size_t display_width(const std::string& s) {
    std::size_t bytes = s.size();
    for (std::size_t pos = 0; (pos = s.find("√", pos)) != std::string::npos;
         pos += 3)
        bytes -= 2;
    return bytes;
}

std::string pad(const std::string& s, std::size_t width) {
    std::size_t w = display_width(s);
    return s + std::string(w < width ? width - w : 0, ' ');
}

std::string vec_str(const Vec3Q& v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

json quad_json(const QuadInt& q) { return json::array({q.a, q.b}); }

QuadInt quad_from(const json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() ||
        !j[1].is_number_integer())
        throw std::invalid_argument("component must be an integer pair");
    return {j[0].get<std::int64_t>(), j[1].get<std::int64_t>()};
}

json vec_json(const Vec3Q& v) {
    return json::array({quad_json(v.x), quad_json(v.y), quad_json(v.z)});
}

Vec3Q vec_from(const json& j) {
    if (!j.is_array() || j.size() != 3)
        throw std::invalid_argument("direction must have three components");
    return {quad_from(j[0]), quad_from(j[1]), quad_from(j[2])};
}

Axis axis_from(const std::string& s) {
    if (s == "x") return Axis::x;
    if (s == "y") return Axis::y;
    if (s == "z") return Axis::z;
    throw std::invalid_argument("cube must be x, y or z");
}

// Runs fn over every record line, turning any parse or shape error into
// std::invalid_argument tagged with the line number.
template <class Fn>
void for_each_record(const std::string& text, const char* what, Fn fn) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            fn(json::parse(line));
        } catch (const std::invalid_argument&) {
            throw;
        } catch (const std::exception& e) {
            std::ostringstream os;
            os << what << " line " << lineno << ": " << e.what();
            throw std::invalid_argument(os.str());
        }
    }
}

[[noreturn]] void bad_record(const char* what, int lineno, const char* detail) {
    std::ostringstream os;
    os << what << " line " << lineno << ": " << detail;
    throw std::invalid_argument(os.str());
}

} // namespace

std::string rays_table(const RaySystem& rs) {
    std::vector<std::string> dirs;
    std::size_t w = 0;
    for (const Ray& r : rs.rays) {
        dirs.push_back(vec_str(r.direction));
        w = std::max(w, display_width(dirs.back()));
    }
    std::ostringstream os;
    os << " id  " << pad("direction", w) << "  cube  axis\n";
    for (const Ray& r : rs.rays) {
        const RayOrigin& o = rs.origins[static_cast<std::size_t>(r.id) - 1];
        os << (r.id < 10 ? "  " : " ") << r.id << "  "
           << pad(dirs[static_cast<std::size_t>(r.id) - 1], w) << "  "
           << axis_name(o.cube) << "     " << o.axis_label << "\n";
    }
    os << "\neliminated duplicate axes:\n";
    for (const EliminatedAxis& e : rs.eliminated)
        os << "  cube " << axis_name(e.cube) << "  axis " << pad(e.axis_label, 4)
           << "  duplicate of ray " << e.duplicate_of << "\n";
    int per_cube[3] = {0, 0, 0};
    for (const RayOrigin& o : rs.origins) per_cube[static_cast<int>(o.cube)]++;
    os << "\n" << rs.rays.size() << " rays (" << per_cube[0] << " from cube x, "
       << per_cube[1] << " from cube y, " << per_cube[2] << " from cube z), "
       << rs.eliminated.size() << " axes eliminated\n";
    return os.str();
}

std::string bases_table(std::span<const Basis> bases) {
    std::ostringstream os;
    os << "rank  kind   rays      completion\n";
    int triads = 0;
    for (const Basis& b : bases) {
        std::ostringstream ids;
        for (int s = 0; s < b.size(); ++s) {
            if (s) ids << " ";
            ids << (b.ids[s] < 10 ? " " : "") << b.ids[s];
        }
        os << (b.rank < 10 ? "   " : "  ") << b.rank << "  "
           << (b.is_triad() ? "triad" : "pair ") << "  ";
        if (b.is_triad()) {
            os << ids.str() << "\n";
            ++triads;
        } else {
            os << pad(ids.str(), 8) << "  " << vec_str(b.completion) << "\n";
        }
    }
    os << "\n" << bases.size() << " bases: " << triads << " triads and "
       << bases.size() - static_cast<std::size_t>(triads)
       << " orthogonal pairs (third direction outside the ray set)\n";
    return os.str();
}

std::string rays_records(const RaySystem& rs) {
    std::ostringstream os;
    for (const Ray& r : rs.rays) {
        const RayOrigin& o = rs.origins[static_cast<std::size_t>(r.id) - 1];
        json j{{"id", r.id},
               {"direction", vec_json(r.direction)},
               {"cube", std::string(1, axis_name(o.cube))},
               {"axis", o.axis_label}};
        os << j.dump() << "\n";
    }
    for (const EliminatedAxis& e : rs.eliminated) {
        json j{{"cube", std::string(1, axis_name(e.cube))},
               {"axis", e.axis_label},
               {"duplicate_of", e.duplicate_of}};
        os << j.dump() << "\n";
    }
    return os.str();
}

RaySystem parse_rays_records(const std::string& text) {
    RaySystem rs;
    int lineno = 0;
    for_each_record(text, "rays records", [&](const json& j) {
        ++lineno;
        if (!j.is_object()) bad_record("rays records", lineno, "expected an object");
        if (j.contains("id")) {
            Ray r{j.at("id").get<int>(), vec_from(j.at("direction"))};
            if (r.id != static_cast<int>(rs.rays.size()) + 1)
                bad_record("rays records", lineno, "ray ids must be sequential");
            if (r.direction.is_zero() ||
                !(canonical_direction(r.direction) == r.direction))
                bad_record("rays records", lineno, "direction not canonical");
            rs.rays.push_back(r);
            rs.origins.push_back({axis_from(j.at("cube").get<std::string>()),
                                  j.at("axis").get<std::string>()});
        } else if (j.contains("duplicate_of")) {
            rs.eliminated.push_back({axis_from(j.at("cube").get<std::string>()),
                                     j.at("axis").get<std::string>(),
                                     j.at("duplicate_of").get<int>()});
        } else {
            bad_record("rays records", lineno, "neither a ray nor an elimination");
        }
    });
    return rs;
}

std::string bases_records(std::span<const Basis> bases) {
    std::ostringstream os;
    for (const Basis& b : bases) {
        json j{{"rank", b.rank}, {"ids", b.ids}};
        if (!b.is_triad()) j["completion"] = vec_json(b.completion);
        os << j.dump() << "\n";
    }
    return os.str();
}

std::vector<Basis> parse_bases_records(const std::string& text) {
    std::vector<Basis> out;
    int lineno = 0;
    for_each_record(text, "bases records", [&](const json& j) {
        ++lineno;
        Basis b;
        b.rank = j.at("rank").get<int>();
        b.ids = j.at("ids").get<std::vector<int>>();
        if (b.size() < 2 || b.size() > 3 ||
            !std::is_sorted(b.ids.begin(), b.ids.end()) ||
            std::adjacent_find(b.ids.begin(), b.ids.end()) != b.ids.end())
            bad_record("bases records", lineno, "ids must be 2 or 3 ascending ray ids");
        if (b.is_triad()) {
            if (j.contains("completion"))
                bad_record("bases records", lineno, "triad with completion");
        } else {
            b.completion = vec_from(j.at("completion"));
        }
        out.push_back(std::move(b));
    });
    return out;
}

} // namespace ks33
