function topLevel() {
  return 1;
}

function outer() {
  function inner() {
    function innermost() { return 3; }
    return innermost();
  }
  return inner();
}

function oneLiner(){return 1}

function withArgs(a, b, c) {
  var total = a + b;
  return total + c;
}
