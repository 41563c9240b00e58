// outcome: rejected
with ({ "x": 1 }) { print(x); }
