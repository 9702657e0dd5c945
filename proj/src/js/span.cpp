#include "muzeel/js/span.hpp"

namespace muzeel::js {

const char* to_string(FunctionKind kind) {
  switch (kind) {
    case FunctionKind::kDeclaration: return "declaration";
    case FunctionKind::kExpression: return "expression";
    case FunctionKind::kArrowBlock: return "arrow_block";
    case FunctionKind::kArrowExpression: return "arrow_expression";
    case FunctionKind::kMethod: return "method";
    case FunctionKind::kGetterSetter: return "getter_setter";
    case FunctionKind::kGenerator: return "generator";
    case FunctionKind::kAsyncVariant: return "async_variant";
  }
  return "declaration";
}

FunctionKind kind_from_string(const std::string& name) {
  if (name == "expression") return FunctionKind::kExpression;
  if (name == "arrow_block") return FunctionKind::kArrowBlock;
  if (name == "arrow_expression") return FunctionKind::kArrowExpression;
  if (name == "method") return FunctionKind::kMethod;
  if (name == "getter_setter") return FunctionKind::kGetterSetter;
  if (name == "generator") return FunctionKind::kGenerator;
  if (name == "async_variant") return FunctionKind::kAsyncVariant;
  return FunctionKind::kDeclaration;
}

}  // namespace muzeel::js
