f = function(x, obj) {
  with(obj) {
    x = 50;
    return y } };

window.y = "global-y";
print(f(1, {}));
print(f(1, { "y": "own-y" }));
var o = { "x": 5 };
f(1, o);
print(o.x);
