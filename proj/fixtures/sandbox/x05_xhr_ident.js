// outcome: rejected
var ctor = XMLHttpRequest;
