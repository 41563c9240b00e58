function Point(x, y) {
  this.x = x;
  this.y = y }

pt = new Point(50, 100);
print(pt.x);
print(pt.y);
Point.prototype.getX = function() { return this.x };
print(pt.getX());
