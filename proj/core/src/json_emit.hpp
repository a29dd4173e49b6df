#ifndef SWAPSCHED_JSON_EMIT_HPP
#define SWAPSCHED_JSON_EMIT_HPP

#include <json.hpp>

#include <functional>
#include <string>

namespace swapsched::detail {

using Json = nlohmann::json;

// Line-oriented pretty printer: objects one key per line (keys sorted, as
// nlohmann::json stores them), arrays without objects on a single line.
// `real` formats floating-point values.
inline void emit_json(const Json& j, std::string& out, int indent, const std::function<std::string(double)>& real)
{
	auto pad = [&](int level) { out.append(static_cast<std::size_t>(level) * 2, ' '); };
	switch (j.type()) {
	case Json::value_t::object: {
		if (j.empty()) {
			out += "{}";
			return;
		}
		out += "{\n";
		bool first = true;
		for (auto it = j.begin(); it != j.end(); ++it) {
			if (!first)
				out += ",\n";
			first = false;
			pad(indent + 1);
			out += Json(it.key()).dump();
			out += ": ";
			emit_json(it.value(), out, indent + 1, real);
		}
		out += "\n";
		pad(indent);
		out += "}";
		return;
	}
	case Json::value_t::array: {
		bool has_object = false;
		for (const auto& e : j)
			has_object = has_object || e.is_object() || (e.is_array() && !e.empty() && e.front().is_object());
		if (!has_object) {
			out += "[";
			bool first = true;
			for (const auto& e : j) {
				if (!first)
					out += ", ";
				first = false;
				emit_json(e, out, indent, real);
			}
			out += "]";
			return;
		}
		out += "[\n";
		bool first = true;
		for (const auto& e : j) {
			if (!first)
				out += ",\n";
			first = false;
			pad(indent + 1);
			emit_json(e, out, indent + 1, real);
		}
		out += "\n";
		pad(indent);
		out += "]";
		return;
	}
	case Json::value_t::number_float:
		out += real(j.get<double>());
		return;
	default:
		out += j.dump();
		return;
	}
}

inline std::string emit_document(const Json& j, const std::function<std::string(double)>& real)
{
	std::string out;
	emit_json(j, out, 0, real);
	out += '\n';
	return out;
}

} // namespace swapsched::detail

#endif
