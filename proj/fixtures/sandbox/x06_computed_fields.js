// outcome: certified
var table = { "a": 1, "bb": 2 };
var name = "a" ;
print(table[name]);
name = "bb";
print(table[name]);
table[name] = 5;
print(table.bb);
