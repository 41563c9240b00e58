// outcome: certified
var data = { "count": 2, "label": "items" };
print(data.count + " " + data["label"]);
