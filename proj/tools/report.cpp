#include "report.hpp"

#include <array>
#include <charconv>
#include <stdexcept>

#include "wbell/version.hpp"

namespace wbell::report {

namespace {

void dump_value(const Json& node, std::string& out, int depth);

void indent(std::string& out, int depth) { out.append(2 * depth, ' '); }

void dump_object(const Json& node, std::string& out, int depth) {
  if (node.empty()) {
    out += "{}";
    return;
  }
  out += "{\n";
  std::size_t remaining = node.size();
  for (auto it = node.begin(); it != node.end(); ++it) {
    indent(out, depth + 1);
    out += Json(it.key()).dump();
    out += ": ";
    dump_value(it.value(), out, depth + 1);
    if (--remaining) out += ',';
    out += '\n';
  }
  indent(out, depth);
  out += '}';
}

void dump_array(const Json& node, std::string& out, int depth) {
  if (node.empty()) {
    out += "[]";
    return;
  }
  bool scalars_only = true;
  for (const Json& element : node)
    if (element.is_object() || element.is_array()) {
      scalars_only = false;
      break;
    }
  if (scalars_only) {  // e.g. outcome tuples and spectra stay on one line
    out += '[';
    std::size_t remaining = node.size();
    for (const Json& element : node) {
      dump_value(element, out, depth);
      if (--remaining) out += ", ";
    }
    out += ']';
    return;
  }
  out += "[\n";
  std::size_t remaining = node.size();
  for (const Json& element : node) {
    indent(out, depth + 1);
    dump_value(element, out, depth + 1);
    if (--remaining) out += ',';
    out += '\n';
  }
  indent(out, depth);
  out += ']';
}

void dump_value(const Json& node, std::string& out, int depth) {
  if (node.is_object())
    dump_object(node, out, depth);
  else if (node.is_array())
    dump_array(node, out, depth);
  else if (node.is_number_float())
    out += format_double(node.get<double>());
  else
    out += node.dump();  // strings, integers, booleans, null
}

Json report_tree(const RunReport& report) {
  Json root = Json::object();
  root["command"] = report.command;
  root["params"] = report.params;
  root["results"] = report.results;
  if (report.seed)
    root["seed"] = *report.seed;
  else
    root["seed"] = nullptr;
  root["version"] = kVersion;
  return root;
}

}  // namespace

std::string format_double(double value) {
  std::array<char, 64> buffer;
  const auto [ptr, ec] =
      std::to_chars(buffer.data(), buffer.data() + buffer.size(), value,
                    std::chars_format::general, 17);
  if (ec != std::errc{})
    throw std::runtime_error("format_double: conversion failed");
  return std::string(buffer.data(), ptr);
}

std::string to_json(const RunReport& report) {
  std::string out;
  dump_value(report_tree(report), out, 0);
  out += '\n';
  return out;
}

std::string to_text(const RunReport& report) {
  const Json flat = report_tree(report).flatten();
  std::string out;
  for (auto it = flat.begin(); it != flat.end(); ++it) {
    out += it.key().substr(1);  // drop the leading '/' of the JSON pointer
    out += " = ";
    const Json& value = it.value();
    if (value.is_number_float())
      out += format_double(value.get<double>());
    else if (value.is_string())
      out += value.get<std::string>();
    else
      out += value.dump();
    out += '\n';
  }
  return out;
}

Json sign_linear_json(const selection::SignLinear& value) {
  Json j = Json::object();
  j["c0"] = value.c0;
  j["c1"] = value.c1;
  return j;
}

}  // namespace wbell::report
