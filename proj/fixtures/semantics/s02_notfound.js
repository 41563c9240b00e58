print({ "x": 7 }["y"]);
