#pragma once

#include <stdexcept>
#include <string>

namespace synth {

// Source text shared by the generated problems: the three standard
// templates, composition first.
inline std::string standard_templates() {
  return
      "val comp(f, g) = lambda (x) f(g(x)) ;;\n"
      "\n"
      "rec map(f) = lambda (xs)\n"
      "    (if xs = nil\n"
      "    then nil\n"
      "    else f(head(xs)) : map(f)(tail(xs))) ;;\n"
      "\n"
      "rec filter(p) = lambda (xs)\n"
      "    (if xs = nil\n"
      "    then nil\n"
      "    else\n"
      "        if p(head(xs))\n"
      "        then head(xs) : filter(p)(tail(xs))\n"
      "        else filter(p)(tail(xs))) ;;\n"
      "\n";
}

// Emits the knowledge and examples of a benchmark problem as a source file.
//   addN        param = N            add N to an integer
//   filterUpNum param ignored        drop upper-case and numeric characters
//   addRevFilter param ignored       reverse, add 4 to all, keep odd
//   maze        param = size         walk from (0,0) to (size-1,size-1)
//   droplasts   param = noise count  drop last of outer and inner lists
inline std::string generate_problem(const std::string& problem, int param) {
  std::string src = standard_templates();
  if (problem == "addN") {
    int n = param;
    if (n < 1) throw std::invalid_argument("addN needs N >= 1");
    int m1 = n == 1 ? 2 : 1;
    int m2 = n == 2 ? 3 : 2;
    src += "val BK_add1(x) = x + 1 ;;\n\n";
    src += "NEx (1) => " + std::to_string(1 + m1) + " ;;\n";
    src += "NEx (3) => " + std::to_string(3 + m2) + " ;;\n";
    src += "PEx (1) => " + std::to_string(1 + n) + " ;;\n";
    src += "PEx (7) => " + std::to_string(7 + n) + " ;;\n";
    src += "Synthesize (Int) => Int ;;\n";
    return src;
  }
  if (problem == "filterUpNum") {
    src +=
        "val BK_isUpper(c) = isUpper(c) ;;\n"
        "val BK_isAlpha(c) = isAlpha(c) ;;\n"
        "val BK_isNum(c) = isNum(c) ;;\n"
        "val BK_not(b) = not(b) ;;\n\n"
        "PEx (['a','B','c','1']) => ['a','c'] ;;\n"
        "PEx (['X','y','2','z','Q']) => ['y','z'] ;;\n"
        "NEx (['a','B']) => ['a','B'] ;;\n"
        "NEx (['q','R','7']) => ['q','R'] ;;\n"
        "Synthesize ([Char]) => [Char] ;;\n";
    return src;
  }
  if (problem == "addRevFilter") {
    src +=
        "val BK_add1(x) = x + 1 ;;\n"
        "val BK_add2(x) = x + 2 ;;\n"
        "rec BK_isOdd(x) = if x = 0 then false else\n"
        "    (if x = 1 then true else BK_isOdd(x - 2)) ;;\n"
        "val BK_reverse(xs) = reverse(xs) ;;\n\n"
        "PEx ([1,2,3]) => [7,5] ;;\n"
        "PEx ([2,3,5,6]) => [9,7] ;;\n"
        "NEx ([1,2,3]) => [5,7] ;;\n"
        "NEx ([1,2,3]) => [7,6,5] ;;\n"
        "Synthesize ([Int]) => [Int] ;;\n";
    return src;
  }
  if (problem == "maze") {
    int size = param;
    if (size < 2) throw std::invalid_argument("maze needs size >= 2");
    std::string limit = std::to_string(size - 1);
    src += "val BK_mRight(p) = if head(p) < " + limit +
           " then (head(p) + 1) : (head(tail(p)) : nil) else p ;;\n";
    src += "val BK_mLeft(p) = if 0 < head(p)"
           " then (head(p) - 1) : (head(tail(p)) : nil) else p ;;\n";
    src += "val BK_mDown(p) = if 0 < head(tail(p))"
           " then head(p) : ((head(tail(p)) - 1) : nil) else p ;;\n";
    src += "val BK_mUp(p) = if head(tail(p)) < " + limit +
           " then head(p) : ((head(tail(p)) + 1) : nil) else p ;;\n\n";
    src += "PEx ([0,0]) => [" + limit + "," + limit + "] ;;\n";
    src += "Synthesize ([Int]) => [Int] ;;\n";
    return src;
  }
  if (problem == "droplasts") {
    int noise = param;
    if (noise < 0) throw std::invalid_argument("droplasts needs noise >= 0");
    src +=
        "val BK_reverse(xs) = reverse(xs) ;;\n"
        "val BK_tail(xs) = tail(xs) ;;\n";
    for (int i = 1; i <= noise; ++i) {
      std::string k = std::to_string(i);
      src += "val BK_id" + k + "(x) = x ;;\n";
    }
    src +=
        "\n"
        "PEx ([[1,2],[3,4],[5,6]]) => [[1],[3]] ;;\n"
        "PEx ([[1,2,3],[4,5,6]]) => [[1,2]] ;;\n"
        "NEx ([[1,2],[3,4]]) => [[1,2],[3,4]] ;;\n"
        "NEx ([[1,2],[3,4]]) => [[2],[4]] ;;\n"
        "Synthesize ([[Int]]) => [[Int]] ;;\n";
    return src;
  }
  throw std::invalid_argument("unknown problem '" + problem + "'");
}

}  // namespace synth
