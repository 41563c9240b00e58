f = function(x) { return x + 1 };
f.y = 90;
print(f(f.y));
