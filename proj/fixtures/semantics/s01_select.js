var obj = { "x": 500, "y": 100 };
var select = function(name) { return obj[name] };
print(select("x") + select("y"));
