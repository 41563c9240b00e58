try { null.x } catch (e) { print(e.type) }
try { missing() } catch (e) { print(e.message) }
try { undefined[0] } catch (e) { print("caught") }
print("alive");
