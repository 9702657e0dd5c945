var f = function () {
  return "anon";
};

var named = function recur(n) {
  return n <= 1 ? 1 : n * recur(n - 1);
};

(function () {
  var hidden = 1;
  window.__iife = hidden;
})();

!function () { return "bang"; }();

setTimeout(function () {
  f();
}, 10);

var table = {
  handler: function (e) {
    return e;
  }
};

var picked = (flag ? function () { return 1; } : function () { return 2; });
