// outcome: rejected
var o = { "n": 1 };
o["n"]++;
