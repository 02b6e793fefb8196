#pragma once

#include "skg/model.hpp"

namespace fixtures {

inline skg::Etype etype(std::string id, std::vector<std::string> labels = {},
                        std::vector<std::string> props = {},
                        std::vector<std::string> instances = {}) {
    skg::Etype e;
    e.id = id;
    e.labels = labels.empty() ? std::vector<std::string>{id} : std::move(labels);
    e.data_properties = std::move(props);
    e.instances = std::move(instances);
    return e;
}

inline skg::ObjectProperty prop(std::string id, std::string domain,
                                std::string range,
                                std::optional<std::string> sub = std::nullopt) {
    skg::ObjectProperty p;
    p.id = id;
    p.labels = {id};
    p.domain = std::move(domain);
    p.range = std::move(range);
    p.sub_property_of = std::move(sub);
    return p;
}

// The smart-university schema: student/teacher/course/scholarship with
// take, receive, teach, lecture.
inline skg::Skg figure3(const std::string& name = "university") {
    skg::Skg s;
    s.name = name;
    s.etypes = {etype("student"), etype("teacher"), etype("course"),
                etype("scholarship")};
    s.object_properties = {prop("take", "student", "course"),
                           prop("receive", "student", "scholarship"),
                           prop("teach", "teacher", "student"),
                           prop("lecture", "teacher", "course")};
    return s;
}

} // namespace fixtures
