// outcome: certified
var a = [10, 20, 30];
var total = 0;
for (var i = 0; i < a.length; i = i + 1) { total = total + a[i] }
print(total);
