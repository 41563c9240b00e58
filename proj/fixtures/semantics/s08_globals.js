var x = 0;
window.x = 50;
print(x);
x = 100;
print(window.x);
print(window.window === window);
