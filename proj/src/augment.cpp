#include "augment.hpp"

namespace descqa {

const char* origin_name(Technique t) {
  switch (t) {
    case Technique::Hyponym: return "hyponym";
    case Technique::Hypernym: return "hypernym";
    case Technique::ColorInversion: return "color_inversion";
    case Technique::Adversarial: return "adversarial";
    case Technique::CssQuestion: return "css_question";
    case Technique::CssDescription: return "css_description";
    case Technique::EdaQuestion: return "eda_q";
    case Technique::EdaDescription: return "eda_d";
    case Technique::CwrQuestion: return "cwr_q";
    case Technique::CwrDescription: return "cwr_d";
    case Technique::CwiQuestion: return "cwi_q";
    case Technique::CwiDescription: return "cwi_d";
    case Technique::BtQuestion: return "bt_q";
    case Technique::BtDescription: return "bt_d";
  }
  return "unknown";
}

const char* display_label(Technique t) {
  switch (t) {
    case Technique::Hyponym: return "Hyponym Replacement";
    case Technique::Hypernym: return "Hypernym Replacement";
    case Technique::ColorInversion: return "Color Inversion";
    case Technique::Adversarial: return "Adversarial Word Replacement";
    case Technique::CssQuestion: return "Counterfactual Samples (Q)";
    case Technique::CssDescription: return "Counterfactual Samples (D)";
    case Technique::EdaQuestion: return "EDA (Q)";
    case Technique::EdaDescription: return "EDA (D)";
    case Technique::CwrQuestion: return "Contextual Word Replacement (Q)";
    case Technique::CwrDescription: return "Contextual Word Replacement (D)";
    case Technique::CwiQuestion: return "Contextual Word Insertion (Q)";
    case Technique::CwiDescription: return "Contextual Word Insertion (D)";
    case Technique::BtQuestion: return "Back Translation (Q)";
    case Technique::BtDescription: return "Back Translation (D)";
  }
  return "Unknown";
}

const std::vector<Technique>& all_techniques() {
  static const std::vector<Technique> list = {
      Technique::Hyponym,        Technique::Hypernym,
      Technique::ColorInversion, Technique::Adversarial,
      Technique::CssQuestion,    Technique::CssDescription,
      Technique::EdaQuestion,    Technique::EdaDescription,
      Technique::CwrQuestion,    Technique::CwrDescription,
      Technique::CwiQuestion,    Technique::CwiDescription,
      Technique::BtQuestion,     Technique::BtDescription,
  };
  return list;
}

std::optional<Technique> technique_from_name(const std::string& name) {
  for (Technique t : all_techniques()) {
    if (name == origin_name(t)) return t;
  }
  return std::nullopt;
}

bool is_dav(Technique t) {
  return static_cast<int>(t) <= static_cast<int>(Technique::CssDescription);
}

int64_t synthetic_question_id(Technique t, int64_t parent_question_id,
                              int ordinal) {
  return static_cast<int64_t>(t) * 1000000000000LL + parent_question_id * 100 +
         ordinal;
}

}  // namespace descqa
