try {
  try { throw "boom" } finally { print("fin") }
} catch (e) { print(e) }
print("after");
