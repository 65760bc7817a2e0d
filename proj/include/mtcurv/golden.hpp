#pragma once

#include <array>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "mtcurv/chart.hpp"
#include "mtcurv/errors.hpp"
#include "mtcurv/field.hpp"
#include "mtcurv/parse.hpp"
#include "mtcurv/quaternion.hpp"

namespace mtcurv {

/// One closed-form operator table entry: scalar and frame-vector component
/// expressions over the chart coordinates, the component symbols f0..f3 and
/// derivative symbols like f2_r_theta (component name followed by the
/// coordinates differentiated against).
struct GoldenForm {
    Expr scalar;
    std::array<Expr, 3> vector;
};

/// Closed-form tables for one chart, loaded from the golden-forms fixture
/// file. These are independent transcriptions that the suite compares against
/// the generic curvilinear implementation.
class GoldenTable {
public:
    GoldenTable(std::string chart_name, std::array<std::string, 3> coords,
                std::map<std::string, GoldenForm> ops)
        : chart_name_(std::move(chart_name)), coords_(std::move(coords)), ops_(std::move(ops)) {}

    const std::string& chart_name() const noexcept { return chart_name_; }

    std::vector<std::string> operator_names() const {
        std::vector<std::string> out;
        for (const auto& [k, v] : ops_) out.push_back(k);
        return out;
    }

    const GoldenForm& form(const std::string& op) const {
        const auto it = ops_.find(op);
        if (it == ops_.end())
            throw SchemaError("no golden form '" + op + "' for chart '" + chart_name_ + "'");
        return it->second;
    }

    /// Evaluates the table entry for `op` on `f` at p: every derivative
    /// symbol is bound to the exact derivative of the matching component,
    /// separately for the real and imaginary slices.
    Quaternion eval(const std::string& op, const QuatField& f, const Coords& p) const {
        if (f.chart().name() != chart_name_)
            throw SchemaError("golden table for chart '" + chart_name_ +
                              "' applied to a field on chart '" + f.chart().name() + "'");
        const GoldenForm& g = form(op);
        const EvalEnv env_re = build_env(g, f, p, false);
        const EvalEnv env_im = build_env(g, f, p, true);
        const auto complex_eval = [&](const Expr& e) {
            return Complex(e.eval(env_re), e.eval(env_im));
        };
        return Quaternion(complex_eval(g.scalar),
                          {complex_eval(g.vector[0]), complex_eval(g.vector[1]),
                           complex_eval(g.vector[2])});
    }

private:
    EvalEnv build_env(const GoldenForm& g, const QuatField& f, const Coords& p,
                      bool imag_part) const {
        EvalEnv env;
        for (int i = 0; i < 3; ++i)
            env.set(coords_[static_cast<std::size_t>(i)], p[static_cast<std::size_t>(i)]);
        const EvalEnv point_env = env;

        const auto component = [&](int k) -> const Expr& {
            const ComplexExpr& c =
                k == 0 ? f.scalar_comp() : f.vector_comp()[static_cast<std::size_t>(k - 1)];
            return imag_part ? c.im : c.re;
        };

        std::vector<std::string> symbols = g.scalar.variables();
        for (const Expr& v : g.vector)
            for (auto& name : v.variables()) symbols.push_back(name);
        for (const std::string& name : symbols) {
            if (env.find(name)) continue;
            env.set(name, eval_symbol(name, component, point_env));
        }
        return env;
    }

    template <class ComponentFn>
    double eval_symbol(const std::string& name, ComponentFn&& component,
                       const EvalEnv& point_env) const {
        // Symbol shape: fK, fK_<coord>, or fK_<coord>_<coord>.
        if (name.size() < 2 || name[0] != 'f' || name[1] < '0' || name[1] > '3')
            throw SchemaError("golden form references unknown symbol '" + name + "'");
        const int k = name[1] - '0';
        Expr e = component(k);
        std::size_t pos = 2;
        while (pos < name.size()) {
            if (name[pos] != '_')
                throw SchemaError("golden form references unknown symbol '" + name + "'");
            ++pos;
            bool matched = false;
            for (const auto& c : coords_) {
                if (name.compare(pos, c.size(), c) == 0 &&
                    (pos + c.size() == name.size() || name[pos + c.size()] == '_')) {
                    e = e.diff(c);
                    pos += c.size();
                    matched = true;
                    break;
                }
            }
            if (!matched)
                throw SchemaError("golden form references unknown symbol '" + name + "'");
        }
        return e.eval(point_env);
    }

    std::string chart_name_;
    std::array<std::string, 3> coords_;
    std::map<std::string, GoldenForm> ops_;
};

/// Loads the golden table for `chart_name` from the golden-forms JSON file.
inline GoldenTable load_golden_table(const std::filesystem::path& path,
                                     const std::string& chart_name) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(buf.str());
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(std::string("invalid golden-forms JSON: ") + e.what());
    }
    try {
        const auto& jc = j.at("charts").at(chart_name);
        std::array<std::string, 3> coords;
        for (int i = 0; i < 3; ++i)
            coords[static_cast<std::size_t>(i)] =
                jc.at("coords")[static_cast<std::size_t>(i)].get<std::string>();
        std::map<std::string, GoldenForm> ops;
        for (const auto& [op, jf] : jc.at("operators").items()) {
            GoldenForm g;
            g.scalar = parse(jf.at("scalar").get<std::string>());
            for (int i = 0; i < 3; ++i)
                g.vector[static_cast<std::size_t>(i)] =
                    parse(jf.at("vector")[static_cast<std::size_t>(i)].get<std::string>());
            ops.emplace(op, std::move(g));
        }
        return GoldenTable(chart_name, std::move(coords), std::move(ops));
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(std::string("golden-forms file does not match the schema: ") + e.what());
    }
}

} // namespace mtcurv
