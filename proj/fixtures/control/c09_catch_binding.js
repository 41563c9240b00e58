try { throw 5 } catch (e) { e = e + 1; print(e) }
var r = "";
for (var i = 0; i < 3; i++) {
  try { throw i } catch (e2) { r = r + e2 }
}
print(r);
