function f(v) {
  switch (v) {
    case 1:
    case 2: print("a"); break;
    case 3: print("b");
    default: print("c");
  }
}
f(1); f(2); f(3); f(9);
