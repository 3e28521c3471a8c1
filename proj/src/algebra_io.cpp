#include "djhp/algebra.hpp"

#include "json.hpp"

#include <algorithm>

namespace djhp {

using nlohmann::json;

std::string algebra_to_json(const FDAlgebra& A) {
    json j;
    j["format"] = "djhp-algebra/1";
    j["name"] = A.name;
    j["field"] = A.field.is_rational() ? "Q" : "F" + std::to_string(A.field.characteristic());
    j["vertices"] = A.vertex_labels;
    j["idempotent_index"] = A.idempotent_index;
    json basis = json::array();
    for (const auto& b : A.basis)
        basis.push_back({{"label", b.label}, {"src", b.src}, {"tgt", b.tgt}, {"degree", b.degree}});
    j["basis"] = std::move(basis);

    std::vector<std::array<std::string, 5>> triples;
    for (const auto& [key, vec] : A.table) {
        int i = static_cast<int>(key >> 32);
        int jj = static_cast<int>(key & 0xffffffffu);
        for (const auto& [k, c] : vec.terms)
            triples.push_back({std::to_string(i), std::to_string(jj), std::to_string(k),
                               boost::multiprecision::numerator(c).str(),
                               boost::multiprecision::denominator(c).str()});
    }
    std::sort(triples.begin(), triples.end(), [](const auto& a, const auto& b) {
        auto num = [](const std::string& s) { return std::stoll(s); };
        if (num(a[0]) != num(b[0])) return num(a[0]) < num(b[0]);
        if (num(a[1]) != num(b[1])) return num(a[1]) < num(b[1]);
        return num(a[2]) < num(b[2]);
    });
    json table = json::array();
    for (const auto& t : triples)
        table.push_back({std::stoll(t[0]), std::stoll(t[1]), std::stoll(t[2]), t[3], t[4]});
    j["table"] = std::move(table);
    return j.dump(2);
}

FDAlgebra algebra_from_json(const std::string& text) {
    json j = json::parse(text);
    if (j.value("format", "") != "djhp-algebra/1")
        throw std::invalid_argument("unknown algebra dump format");
    FDAlgebra A;
    A.name = j.at("name").get<std::string>();
    std::string fld = j.at("field").get<std::string>();
    if (fld == "Q")
        A.field = Field::rationals();
    else if (fld.size() > 1 && fld[0] == 'F')
        A.field = Field::prime(std::stoull(fld.substr(1)));
    else
        throw std::invalid_argument("bad field spec '" + fld + "'");
    A.vertex_labels = j.at("vertices").get<std::vector<std::string>>();
    A.idempotent_index = j.at("idempotent_index").get<std::vector<int>>();
    for (const auto& b : j.at("basis"))
        A.basis.push_back({b.at("label").get<std::string>(), b.at("src").get<int>(),
                           b.at("tgt").get<int>(), b.at("degree").get<int>()});
    for (const auto& t : j.at("table")) {
        int i = t.at(0).get<int>();
        int jj = t.at(1).get<int>();
        int k = t.at(2).get<int>();
        Scalar c = A.field.from_fraction(BigInt(t.at(3).get<std::string>()),
                                         BigInt(t.at(4).get<std::string>()));
        auto& vec = A.table[FDAlgebra::key(i, jj)];
        sv_axpy(A.field, vec, A.field.one(), sv_scaled_unit(k, c));
    }
    // drop any zero rows produced by cancellation
    for (auto it = A.table.begin(); it != A.table.end();)
        it = it->second.empty() ? A.table.erase(it) : std::next(it);
    return A;
}

} // namespace djhp
