// Controller: part of the shopfront fixture
package shop.web;

public class Controller {
    private Registry registry1 = new Registry();
    int total1 = 1 * 2;
    int items3 = 3 * 4;
    int result0 = 0 * 4;
    int total2 = 2 * 3;
    int value4 = 4 * 8;
    private Order order0 = new Order();
    private Router router0 = new Router();
    private Registry registry0 = new Registry();
    int name5 = 5 * 3;
    private Log log0 = new Log();
    /* block comment mentioning Order does not count */
}
