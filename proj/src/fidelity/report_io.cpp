// Copyright 2026 The fidaudit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <string>

#include "common/error.hpp"
#include "common/io.hpp"
#include "common/text.hpp"
#include "fidelity/fidelity.hpp"
#include "json.hpp"

namespace fidaudit {

using json = nlohmann::ordered_json;

namespace {

json AveragesToJson(const ComponentAverages& a) {
  json out;
  for (const ComponentColumn& col : ComponentColumns()) out[col.name] = a.*col.field;
  return out;
}

ComponentAverages AveragesFromJson(const json& j) {
  ComponentAverages a;
  for (const ComponentColumn& col : ComponentColumns()) {
    a.*col.field = j.at(col.name).get<double>();
  }
  return a;
}

std::string ColumnHeader() {
  std::string out;
  for (const ComponentColumn& col : ComponentColumns()) {
    out += ",";
    out += col.name;
  }
  return out;
}

std::string AveragesRow(const ComponentAverages& a) {
  std::string out;
  for (const ComponentColumn& col : ComponentColumns()) {
    out += ",";
    out += FormatDouble(a.*col.field);
  }
  return out;
}

}  // namespace

std::string ReportToJson(const FidelityReport& report) {
  json root;
  root["label"] = report.label;
  root["documents"] = report.per_document.size();
  root["annotations"] = report.per_annotation.size();
  root["per_annotation"] = json::array();
  for (const auto& [key, c] : report.per_annotation) {
    json item;
    item["doc_id"] = key.doc_id;
    item["annotator_id"] = key.annotator_id;
    item["additional_schema"] = c.additional_schema;
    item["new_subjects"] = c.new_subjects;
    item["aspects"] = c.aspects;
    item["specializations"] = c.specializations;
    item["distinct_schema_labels"] = c.distinct_schema_labels;
    item["omitted_subjects"] = c.omitted_subjects;
    item["fidelity"] = c.fidelity;
    root["per_annotation"].push_back(std::move(item));
  }
  root["per_document"] = json::array();
  for (const DocumentSummary& d : report.per_document) {
    json item;
    item["doc_id"] = d.doc_id;
    item["annotators"] = d.annotators;
    item["averages"] = AveragesToJson(d.averages);
    root["per_document"].push_back(std::move(item));
  }
  root["summary"]["mean"] = AveragesToJson(report.mean);
  root["summary"]["std"] = AveragesToJson(report.stddev);
  return root.dump(2) + "\n";
}

void WriteReport(const FidelityReport& report, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  WriteFileAtomic(dir / "report.json", ReportToJson(report));

  std::string per_annotation =
      "doc_id,annotator_id,additional_schema,new_subjects,aspects,"
      "additional_aspects,specializations,distinct_schema_labels,"
      "omitted_subjects,fidelity\n";
  for (const auto& [key, c] : report.per_annotation) {
    per_annotation += CsvField(key.doc_id) + "," + CsvField(key.annotator_id) +
                      "," + std::to_string(c.additional_schema) + "," +
                      std::to_string(c.new_subjects) + "," +
                      std::to_string(c.aspects) + "," +
                      std::to_string(c.additional_aspects()) + "," +
                      std::to_string(c.specializations) + "," +
                      std::to_string(c.distinct_schema_labels) + "," +
                      std::to_string(c.omitted_subjects) + "," +
                      std::to_string(c.fidelity) + "\n";
  }
  WriteFileAtomic(dir / "per_annotation.csv", per_annotation);

  std::string per_document = "doc_id,annotators" + ColumnHeader() + "\n";
  for (const DocumentSummary& d : report.per_document) {
    per_document += CsvField(d.doc_id) + "," + std::to_string(d.annotators) +
                    AveragesRow(d.averages) + "\n";
  }
  WriteFileAtomic(dir / "per_document.csv", per_document);

  std::string summary = "statistic" + ColumnHeader() + "\n";
  summary += "mean" + AveragesRow(report.mean) + "\n";
  summary += "std" + AveragesRow(report.stddev) + "\n";
  WriteFileAtomic(dir / "summary.csv", summary);
}

FidelityReport LoadReport(const std::filesystem::path& path) {
  const std::filesystem::path file =
      std::filesystem::is_directory(path) ? path / "report.json" : path;
  const std::string text = ReadFile(file);
  FidelityReport report;
  try {
    const json root = json::parse(text);
    report.label = root.value("label", "");
    for (const json& item : root.at("per_annotation")) {
      const auto schema_size = static_cast<std::size_t>(
          item.at("distinct_schema_labels").get<std::int64_t>() +
          item.at("omitted_subjects").get<std::int64_t>());
      ComponentCounts c = ComponentCounts::Make(
          item.at("additional_schema").get<std::int64_t>(),
          item.at("new_subjects").get<std::int64_t>(),
          item.at("aspects").get<std::int64_t>(),
          item.at("specializations").get<std::int64_t>(),
          item.at("distinct_schema_labels").get<std::int64_t>(), schema_size);
      if (c.fidelity != item.at("fidelity").get<std::int64_t>()) {
        throw Error(ErrorCode::kValidation,
                    file.string() + ": fidelity does not match its components");
      }
      report.per_annotation[{item.at("doc_id").get<std::string>(),
                             item.at("annotator_id").get<std::string>()}] = c;
    }
    for (const json& item : root.at("per_document")) {
      DocumentSummary d;
      d.doc_id = item.at("doc_id").get<std::string>();
      d.annotators = item.at("annotators").get<std::size_t>();
      d.averages = AveragesFromJson(item.at("averages"));
      report.per_document.push_back(std::move(d));
    }
    report.mean = AveragesFromJson(root.at("summary").at("mean"));
    report.stddev = AveragesFromJson(root.at("summary").at("std"));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, file.string() + ": " + e.what());
  }
  return report;
}

std::string RankingToCsv(std::span<const RankingRow> rows) {
  std::string out = "rank,label,documents,mean_fidelity,std_fidelity";
  for (const ComponentColumn& col : ComponentColumns()) {
    out += std::string(",mean_") + col.name;
  }
  out += "\n";
  for (const RankingRow& r : rows) {
    out += std::to_string(r.rank) + "," + CsvField(r.label) + "," +
           std::to_string(r.documents) + "," + FormatDouble(r.mean.fidelity) +
           "," + FormatDouble(r.stddev.fidelity) + AveragesRow(r.mean) + "\n";
  }
  return out;
}

}  // namespace fidaudit
