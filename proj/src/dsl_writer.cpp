#include <fmt/format.h>

#include "gmodel/dsl.hpp"

namespace gmodel {
namespace {

std::string shape_text(const Shape& shape) {
  std::string out = "[";
  for (std::size_t i = 0; i < shape.dims.size(); ++i) {
    const auto& d = shape.dims[i];
    if (i) out += ',';
    if (!d.is_symbolic()) {
      out += std::to_string(d.value);
      continue;
    }
    out += d.symbol;
    if (d.offset > 0) out += fmt::format("+{}", d.offset);
    if (d.offset < 0) out += fmt::format("-{}", -d.offset);
  }
  return out + "]";
}

std::string attributes(const HwStereotype& st) {
  std::string out;
  if (st.role) out += fmt::format(" role={}", to_string(*st.role));
  if (st.capacityBytes) out += fmt::format(" capacity={}", *st.capacityBytes);
  if (st.frequencyMHz) out += fmt::format(" frequency={}", *st.frequencyMHz);
  return out;
}

void write_component(std::string& out, const Component& c) {
  out += fmt::format("  component {}", c.name);
  if (c.stereotype) out += fmt::format(" : {}{}", to_string(c.stereotype->kind), attributes(*c.stereotype));
  out += " {\n";
  for (const auto& p : c.ports) {
    out += fmt::format("    port {} {} {} {}\n", p.name, to_string(p.direction), to_string(p.type), shape_text(p.shape));
  }
  for (const auto& p : c.parts) {
    out += fmt::format("    {} {} : ", to_string(p.kind), p.name);
    out += p.inlineStereotype ? std::string(to_string(p.inlineStereotype->kind)) : p.typeRef;
    if (p.shaped) out += " shaped " + shape_text(*p.shaped);
    if (p.inlineStereotype) out += attributes(*p.inlineStereotype);
    out += '\n';
  }
  for (const auto& conn : c.connectors) out += fmt::format("    connect {} -> {}\n", conn.source, conn.target);
  if (c.repetitionSpace) out += fmt::format("    repeat {}\n", shape_text(*c.repetitionSpace));
  if (c.elementaryOp) out += fmt::format("    deploy {}\n", *c.elementaryOp);
  if (c.until) out += fmt::format("    until {} < {} maxIter {}\n", c.until->path, c.until->tol, c.until->maxIter);
  out += "  }\n";
}

void write_block(std::string& out, std::string_view keyword, const std::string& root,
                 const std::vector<SizeParam>* sizes, const std::vector<Component>& components) {
  out += fmt::format("{} {} {{\n", keyword, root);
  bool first = true;
  if (sizes) {
    for (const auto& s : *sizes) out += fmt::format("  size {} = {}\n", s.name, s.value);
    first = sizes->empty();
  }
  for (const auto& c : components) {
    if (!first) out += '\n';
    first = false;
    write_component(out, c);
  }
  out += "}\n";
}

}  // namespace

std::string serialize_model(const Model& model) {
  std::string out;
  write_block(out, "platform", model.platformRoot, nullptr, model.platformComponents);
  out += '\n';
  write_block(out, "application", model.applicationRoot, &model.sizes, model.applicationComponents);
  if (!model.allocations.empty()) out += '\n';
  for (const auto& link : model.allocations) {
    out += fmt::format("allocate {} {} onto {}", to_string(link.kind), link.source, link.target);
    if (link.space) out += fmt::format(" as {}", to_string(*link.space));
    out += '\n';
  }
  return out;
}

}  // namespace gmodel
