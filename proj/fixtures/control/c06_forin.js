var o = {"a": 1, "b": 2, "c": 3};
var keys = "";
for (var k in o) { keys = keys + k }
print(keys);
delete o["b"];
for (k in o) { print(k + "=" + o[k]) }
