var i = 5;
do { print(i); i = i + 1 } while (i < 3);
do { print("x" + i); i++ } while (i < 8);
