function a(){return 1}function b(){return 2}function c(x){return a()+b()+x}
var d=function(){return 4},e=function(){return 5};var g=x=>x+1,h=(y)=>{return y*2};
var obj={m(){return 6},get v(){return 7},n:function(){function deep(){return 8}return deep()}};
(function(){var k=()=>9;k()})();
