i = 0;
while (true) {
  try { break } finally { print("fin") }
}
print("after");
